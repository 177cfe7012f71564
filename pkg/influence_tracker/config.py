"""
Process-wide configuration
"""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Defaults loaded from TDN_* environment variables or a .env file"""

    # Application
    app_name: str = "TDN Influence Tracker"
    log_level: str = "INFO"
    log_format: str = "%(asctime)s |%(levelname)s: %(message)s"

    # Oracle
    seed_counts_itself: bool = True  # zero-length paths count toward the spread
    brute_force_limit: int = 10**6  # max subsets enumerated by brute_force_opt

    # Query cadence: every step up to dense_query_limit steps, then sparser
    dense_query_limit: int = 10**4
    sparse_query_every: int = 10

    # HistApprox audit trail
    pruning_log_size: int = 256

    # Metrics output
    metrics_delimiter: str = ","

    model_config = SettingsConfigDict(
        env_prefix="TDN_",
        env_file=".env",
        env_file_encoding="utf-8",
    )


# Global settings instance
settings = Settings()
