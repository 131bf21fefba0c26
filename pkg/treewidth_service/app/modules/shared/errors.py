import functools
import traceback
import uuid
from datetime import datetime
from enum import Enum
from typing import Any, Dict, Optional


class ErrorCode(str, Enum):
    """에러 코드 enum"""

    # 일반적인 에러
    INTERNAL_ERROR = "INTERNAL_ERROR"
    INVALID_PARAMETER = "INVALID_PARAMETER"

    # 텐서 입력 에러
    TENSOR_SYNTAX = "TENSOR_SYNTAX"
    INDEX_OUT_OF_BOUNDS = "INDEX_OUT_OF_BOUNDS"
    DUPLICATE_ENTRY = "DUPLICATE_ENTRY"
    ZERO_ENTRY = "ZERO_ENTRY"
    WRONG_ORDER = "WRONG_ORDER"
    NOT_SQUARE = "NOT_SQUARE"

    # 트리 분해 에러
    UNCOVERED_VERTEX = "UNCOVERED_VERTEX"
    UNCOVERED_EDGE = "UNCOVERED_EDGE"
    DISCONNECTED_OCCURRENCE = "DISCONNECTED_OCCURRENCE"
    NOT_A_TREE = "NOT_A_TREE"
    UNKNOWN_VERTEX = "UNKNOWN_VERTEX"
    TD_SYNTAX = "TD_SYNTAX"
    NO_CONTAINING_BAG = "NO_CONTAINING_BAG"

    # 한도 초과
    WIDTH_TOO_LARGE = "WIDTH_TOO_LARGE"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"
    DIRECTION_CAP_EXCEEDED = "DIRECTION_CAP_EXCEEDED"

    # 커널 / 부호 에러
    GROUND_SET_MISMATCH = "GROUND_SET_MISMATCH"
    NOT_A_BIJECTION = "NOT_A_BIJECTION"
    OVERLAPPING_BLOCKS = "OVERLAPPING_BLOCKS"

    # 엔진 에러
    INCOMPATIBLE_FUNCTION = "INCOMPATIBLE_FUNCTION"

    # 조노토프 에러
    ZONOTOPE_SYNTAX = "ZONOTOPE_SYNTAX"
    NEGATIVE_COEFFICIENT = "NEGATIVE_COEFFICIENT"

    # 오라클 검증
    ORACLE_MISMATCH = "ORACLE_MISMATCH"


class ExitCode(int, Enum):
    """CLI 종료 코드"""

    OK = 0
    INTERNAL = 1  # 예상치 못한 내부 오류
    USAGE = 2
    INPUT_FORMAT = 3
    LIMIT = 4
    ORACLE_MISMATCH = 5


class TreewidthServiceError(Exception):
    """서비스 기본 에러 클래스"""

    def __init__(
        self,
        code: ErrorCode,
        message: str,
        details: Optional[Dict[str, Any]] = None,
        exit_code: ExitCode = ExitCode.INPUT_FORMAT,
    ):
        self.code = code
        self.message = message
        self.details = details or {}
        self.exit_code = exit_code
        self.timestamp = datetime.now().isoformat()
        self.trace_id = self._generate_trace_id()

        super().__init__(message)

    def _generate_trace_id(self) -> str:
        """추적 ID 생성"""
        return str(uuid.uuid4())[:8]

    def to_dict(self) -> Dict[str, Any]:
        """딕셔너리로 변환"""
        return {
            "error": {
                "code": self.code.value,
                "message": self.message,
                "details": self.details,
                "exit_code": int(self.exit_code),
                "timestamp": self.timestamp,
                "trace_id": self.trace_id,
            }
        }

    def __str__(self) -> str:
        return f"[{self.code.value}] {self.message}"


# 특정 도메인별 에러 클래스들
class TensorFormatError(TreewidthServiceError):
    """텐서 파일 / 데이터 모델 관련 에러"""

    def __init__(self, code: ErrorCode, message: str, **kwargs):
        exit_codes = {
            ErrorCode.WRONG_ORDER: ExitCode.USAGE,
        }
        kwargs.setdefault("exit_code", exit_codes.get(code, ExitCode.INPUT_FORMAT))
        super().__init__(code, message, **kwargs)


class DecompositionError(TreewidthServiceError):
    """트리 분해 검증 / 입출력 에러"""

    def __init__(self, code: ErrorCode, message: str, **kwargs):
        kwargs.setdefault("exit_code", ExitCode.INPUT_FORMAT)
        super().__init__(code, message, **kwargs)


class WidthTooLargeError(TreewidthServiceError):
    """bag 크기가 bitmask 한도를 넘는 경우"""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault("exit_code", ExitCode.LIMIT)
        super().__init__(ErrorCode.WIDTH_TOO_LARGE, message, **kwargs)


class BudgetExceededError(TreewidthServiceError):
    """오라클 열거 예산 초과"""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault("exit_code", ExitCode.LIMIT)
        super().__init__(ErrorCode.BUDGET_EXCEEDED, message, **kwargs)


class KernelError(TreewidthServiceError):
    """subset convolution / 부호 계산 에러"""

    def __init__(self, code: ErrorCode, message: str, **kwargs):
        kwargs.setdefault("exit_code", ExitCode.INPUT_FORMAT)
        super().__init__(code, message, **kwargs)


class EngineError(TreewidthServiceError):
    """DP 엔진 / 디스패처 에러"""

    def __init__(self, code: ErrorCode, message: str, **kwargs):
        exit_codes = {
            ErrorCode.INCOMPATIBLE_FUNCTION: ExitCode.USAGE,
            ErrorCode.NOT_SQUARE: ExitCode.INPUT_FORMAT,
            ErrorCode.INTERNAL_ERROR: ExitCode.INTERNAL,
        }
        kwargs.setdefault("exit_code", exit_codes.get(code, ExitCode.INPUT_FORMAT))
        super().__init__(code, message, **kwargs)


class ZonotopeError(TreewidthServiceError):
    """조노토프 입력 / 혼합부피 에러"""

    def __init__(self, code: ErrorCode, message: str, **kwargs):
        exit_codes = {
            ErrorCode.DIRECTION_CAP_EXCEEDED: ExitCode.LIMIT,
            ErrorCode.NEGATIVE_COEFFICIENT: ExitCode.INPUT_FORMAT,
            ErrorCode.ZONOTOPE_SYNTAX: ExitCode.INPUT_FORMAT,
            ErrorCode.INTERNAL_ERROR: ExitCode.INTERNAL,
        }
        kwargs.setdefault("exit_code", exit_codes.get(code, ExitCode.INPUT_FORMAT))
        super().__init__(code, message, **kwargs)


class OracleMismatchError(TreewidthServiceError):
    """엔진 값과 오라클 값이 다른 경우"""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault("exit_code", ExitCode.ORACLE_MISMATCH)
        super().__init__(ErrorCode.ORACLE_MISMATCH, message, **kwargs)


class ParameterError(TreewidthServiceError):
    """생성기 / CLI 파라미터 에러"""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault("exit_code", ExitCode.USAGE)
        super().__init__(ErrorCode.INVALID_PARAMETER, message, **kwargs)


# 에러 생성 헬퍼 함수들
def create_tensor_error(code: ErrorCode, message: str, **kwargs) -> TensorFormatError:
    """텐서 에러 생성"""
    return TensorFormatError(code, message, **kwargs)


def create_decomposition_error(code: ErrorCode, message: str, **kwargs) -> DecompositionError:
    """트리 분해 에러 생성"""
    return DecompositionError(code, message, **kwargs)


def create_kernel_error(code: ErrorCode, message: str, **kwargs) -> KernelError:
    """커널 에러 생성"""
    return KernelError(code, message, **kwargs)


def create_engine_error(code: ErrorCode, message: str, **kwargs) -> EngineError:
    """엔진 에러 생성"""
    return EngineError(code, message, **kwargs)


def create_zonotope_error(code: ErrorCode, message: str, **kwargs) -> ZonotopeError:
    """조노토프 에러 생성"""
    return ZonotopeError(code, message, **kwargs)


# 에러 핸들러 데코레이터
def handle_errors(error_class: type = TreewidthServiceError):
    """예상치 못한 예외를 서비스 에러로 변환하는 데코레이터"""

    from app.modules.shared.logger import logger

    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except TreewidthServiceError:
                # 이미 우리의 에러이므로 그대로 re-raise
                raise
            except Exception as e:
                logger.error(
                    f"Unexpected error in {func.__name__}",
                    error=str(e),
                    traceback=traceback.format_exc(),
                )
                raise error_class(
                    ErrorCode.INTERNAL_ERROR,
                    f"Unexpected error in {func.__name__}: {str(e)}",
                    details={"original_error": str(e), "function": func.__name__},
                    exit_code=ExitCode.INTERNAL,
                ) from e

        return wrapper

    return decorator
