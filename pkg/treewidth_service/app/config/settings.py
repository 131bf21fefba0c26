from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """어플리케이션 설정"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="TWPERM_",
        case_sensitive=True,
        extra="ignore",
    )

    # 기본 설정
    APP_NAME: str = "Treewidth Permanent Service"
    VERSION: str = "1.0.0"
    ENVIRONMENT: str = "testing"  # development, production, testing

    # 로깅 설정
    LOG_LEVEL: str = "WARNING"
    LOG_FILE: Optional[str] = None
    LOG_JSON: bool = False

    # 분해 / 엔진 설정
    MAX_BAG_SIZE: int = 30  # subset table은 bitmask 인덱스
    DEFAULT_HEURISTIC: str = "min-degree"  # min-degree, min-fill
    THREADS: int = 1

    # 오라클 한도
    RYSER_MAX_N: int = 30
    NAIVE_MAX_N: int = 7
    NAIVE_MAX_AXES: int = 3
    NAIVE_MVOL_BUDGET: int = 10**6

    # 조노토프 설정
    MAX_EXTRA_DIRECTIONS: int = 4

    # 생성기 기본 시드
    RANDOM_SEED: int = 0

    def __init__(self, **kwargs):
        super().__init__(**kwargs)

        # 환경별 설정 조정
        if self.ENVIRONMENT == "development":
            self.LOG_LEVEL = "DEBUG"
        elif self.ENVIRONMENT == "production":
            self.LOG_JSON = True

    @property
    def is_development(self) -> bool:
        return self.ENVIRONMENT == "development"


# 설정 인스턴스 생성
settings = Settings()
