import functools
import json
import logging
import sys
import time
from datetime import datetime

from app.config.settings import settings

ROOT_LOGGER_NAME = "treewidth_service"


class CustomFormatter(logging.Formatter):
    """컬러풀한 로그 포맷터 (개발 환경용), 프로덕션은 JSON"""

    # ANSI 색상 코드
    COLORS = {
        'DEBUG': '\033[36m',
        'INFO': '\033[32m',
        'WARNING': '\033[33m',
        'ERROR': '\033[31m',
        'CRITICAL': '\033[35m',
        'RESET': '\033[0m'
    }

    def format(self, record):
        if not settings.LOG_JSON:
            # 로그 형식: [시간] LEVEL [모듈] 메시지
            if settings.is_development:
                color = self.COLORS.get(record.levelname, self.COLORS['RESET'])
                reset = self.COLORS['RESET']
            else:
                color = reset = ""
            log_message = (
                f"{color}[{datetime.now().strftime('%H:%M:%S')}] "
                f"{record.levelname:<8} "
                f"[{record.name.split('.')[-1]}]{reset} "
                f"{record.getMessage()}"
            )

            # 에러인 경우 스택 트레이스 추가
            if record.exc_info:
                log_message += f"\n{self.formatException(record.exc_info)}"

            return log_message

        log_data = {
            "timestamp": datetime.now().isoformat(),
            "level": record.levelname,
            "module": record.name,
            "message": record.getMessage(),
            "function": record.funcName,
            "line": record.lineno
        }

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_data)


def _with_context(message: str, context: dict) -> str:
    if not context:
        return message
    return message + " | " + " | ".join(f"{k}={v}" for k, v in context.items())


class ContextLogger:
    """`key=value` 컨텍스트를 받는 모듈 로거"""

    def __init__(self, logger: logging.Logger):
        self.logger = logger

    @property
    def name(self) -> str:
        return self.logger.name

    def isEnabledFor(self, level: int) -> bool:
        return self.logger.isEnabledFor(level)

    def debug(self, message: str, **kwargs):
        if self.logger.isEnabledFor(logging.DEBUG):
            self.logger.debug(_with_context(message, kwargs))

    def info(self, message: str, **kwargs):
        self.logger.info(_with_context(message, kwargs))

    def warning(self, message: str, **kwargs):
        self.logger.warning(_with_context(message, kwargs))

    def error(self, message: str, **kwargs):
        self.logger.error(_with_context(message, kwargs))

    def critical(self, message: str, **kwargs):
        self.logger.critical(_with_context(message, kwargs))


class TreewidthServiceLogger(ContextLogger):
    """서비스 전용 로거 (핸들러 소유)"""

    def __init__(self):
        super().__init__(logging.getLogger(ROOT_LOGGER_NAME))
        self.configure()

    def configure(self, level: str = None):
        """로거 설정. stdout은 결과 전용이므로 stderr로 출력"""
        for handler in self.logger.handlers[:]:
            self.logger.removeHandler(handler)

        self.logger.setLevel(getattr(logging, (level or settings.LOG_LEVEL).upper()))

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(CustomFormatter())
        self.logger.addHandler(console_handler)

        if settings.LOG_FILE:
            file_handler = logging.FileHandler(settings.LOG_FILE)
            file_handler.setFormatter(logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            ))
            self.logger.addHandler(file_handler)

        # 중복 로그 방지
        self.logger.propagate = False

    def get_module_logger(self, module_name: str) -> ContextLogger:
        """모듈별 로거 생성"""
        return ContextLogger(logging.getLogger(f"{ROOT_LOGGER_NAME}.{module_name}"))


# 전역 로거 인스턴스
logger = TreewidthServiceLogger()


# 모듈별 로거 생성 함수들
def get_tensor_logger() -> ContextLogger:
    """텐서 모델 / 파일 입력 로거"""
    return logger.get_module_logger("tensor_model")


def get_graph_logger() -> ContextLogger:
    return logger.get_module_logger("graphs")


def get_decomposition_logger() -> ContextLogger:
    """트리 분해 모듈 로거"""
    return logger.get_module_logger("treedecomp")


def get_engine_logger() -> ContextLogger:
    """DP 엔진 로거"""
    return logger.get_module_logger("engines")


def get_zonotope_logger() -> ContextLogger:
    return logger.get_module_logger("zonotopes")


def get_oracle_logger() -> ContextLogger:
    return logger.get_module_logger("oracle")


def get_cli_logger() -> ContextLogger:
    """CLI 로거"""
    return logger.get_module_logger("cli")


# 성능 측정용 데코레이터
def log_execution_time(func):
    """함수 실행 시간을 로그로 남기는 데코레이터"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        module_logger = logger.get_module_logger(func.__module__.split(".")[-1])

        try:
            result = func(*args, **kwargs)
            module_logger.debug(
                f"{func.__name__} completed",
                execution_time=f"{time.perf_counter() - start_time:.3f}s"
            )
            return result
        except Exception as e:
            module_logger.debug(
                f"{func.__name__} failed",
                execution_time=f"{time.perf_counter() - start_time:.3f}s",
                error=str(e)
            )
            raise

    return wrapper
