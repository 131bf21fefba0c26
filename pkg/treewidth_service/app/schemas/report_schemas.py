import hashlib
from datetime import datetime
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class EngineStatsReport(BaseModel):
    """--stats JSON 파일 모델"""
    function: str = Field(..., description="perm, det, disc, hyperdet, mdperm 또는 mvol")
    n: int = Field(..., ge=0, description="텐서 크기 (조노토프 개수)")
    order: int = Field(..., ge=2, description="텐서 차수 d+1")
    width_multi_part: int = Field(..., ge=0, description="최대 bag 크기 (multi-part 규약)")
    nodes: int = Field(..., ge=0, description="트리 분해 노드 수")
    ring_mults: int = Field(..., ge=0, description="ring 곱셈 횟수")
    result: str = Field(..., description="정확한 결과값 (10진수 또는 p/q)")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "function": "perm",
                "n": 9,
                "order": 2,
                "width_multi_part": 4,
                "nodes": 12,
                "ring_mults": 1840,
                "result": "648",
            }
        }
    )


class RunReport(BaseModel):
    """명령 실행 결과 모델"""
    command: List[str] = Field(..., description="명령어 echo")
    input_digest: Optional[str] = Field(None, description="입력 파일 sha256")
    function: str = Field(..., description="계산한 함수")
    result: str = Field(..., description="정확한 결과값")
    width_single_part: Optional[int] = Field(None, description="max bag - 1")
    width_multi_part: Optional[int] = Field(None, description="max bag")
    nodes: int = Field(0, ge=0, description="트리 분해 노드 수")
    ring_mults: int = Field(0, ge=0, description="ring 곱셈 횟수")
    wall_time: float = Field(..., ge=0, description="실행 시간 (초)")
    oracle: Optional[str] = Field(None, description="오라클 결과값 (--oracle 사용 시)")
    timestamp: datetime = Field(default_factory=datetime.now, description="실행 시각")

    def stats(self, n: int, order: int) -> EngineStatsReport:
        return EngineStatsReport(
            function=self.function,
            n=n,
            order=order,
            width_multi_part=self.width_multi_part or 0,
            nodes=self.nodes,
            ring_mults=self.ring_mults,
            result=self.result,
        )


class MismatchReport(BaseModel):
    """오라클 불일치 모델"""
    function: str = Field(..., description="계산한 함수")
    engine_value: str = Field(..., description="엔진 결과")
    oracle_value: str = Field(..., description="오라클 결과")
    input_digest: Optional[str] = Field(None, description="입력 파일 sha256")
    details: Dict[str, Any] = Field(default_factory=dict, description="추가 정보")


def digest_text(text: str) -> str:
    """입력 내용의 sha256 (앞 16자리)"""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def create_run_report(
    command: List[str],
    function: str,
    result: str,
    wall_time: float,
    stats: Optional[Dict[str, Any]] = None,
    input_text: Optional[str] = None,
    oracle: Optional[str] = None,
) -> RunReport:
    """실행 결과 리포트 생성 헬퍼"""
    stats = stats or {}
    return RunReport(
        command=list(command),
        input_digest=digest_text(input_text) if input_text is not None else None,
        function=function,
        result=result,
        width_single_part=stats.get("width_single_part"),
        width_multi_part=stats.get("width_multi_part"),
        nodes=stats.get("nodes", 0),
        ring_mults=stats.get("ring_mults", 0),
        wall_time=wall_time,
        oracle=oracle,
    )
