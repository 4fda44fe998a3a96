from pydantic_settings import BaseSettings, SettingsConfigDict

class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", extra="ignore", env_file_encoding="utf-8")

    CLASS_GROUP_DISCRIMINANT_BOUND: int = 10**6
    ELEMENT_NORM_BOUND: int = 10**13

    SEARCH_BOUND: int = 10**6
    SEARCH_PROGRESS_EVERY: int = 5000
    SEARCH_MODE: str = "interleaved"
    GENERATOR_ORDERING: str = "smallest"

    SPLIT_LIST_LENGTH: int = 12
    CHARACTER_CONDUCTOR_BOUND: int = 10**6
    CHARACTER_CHECK_PRIMES: int = 20

    PERIOD_TOLERANCE: float = 1e-4
    PERIOD_MAX_PRECISION: int = 2**20
    FROBENIUS_TRIALS: int = 50
    FROBENIUS_PRIME_BOUND: int = 10**4
    FROBENIUS_SEED: int = 0

    LOG_LEVEL: str = "INFO"


settings = Settings()
