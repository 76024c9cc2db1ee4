from pydantic_settings import BaseSettings
from typing import List


class Settings(BaseSettings):
    PROJECT_NAME: str = "Thompson Link Services"
    VERSION: str = "1.0.0"
    API_V1_STR: str = "/api/v1"
    ENVIRONMENT: str = "development"
    DEBUG: bool = True
    ALLOWED_HOSTS: List[str] = ["*"]

    # Logging
    LOG_LEVEL: str = "INFO"

    # Invariant engine
    MAX_CROSSINGS: int = 24  # cap on the diagram handed to the state sum
    SIMPLIFY_BEFORE_BRACKET: bool = True

    # Property suites
    DEFAULT_SEED: int = 0
    DEFAULT_CASES: int = 200
    MAX_RANDOM_VERTICES: int = 3
    TREFOIL_SEARCH_DEPTH: int = 4

    class Config:
        env_file = ".env"


settings = Settings()
