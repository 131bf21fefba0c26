"""
전수 계산 참조 구현

가능한 한 직접적으로 작성하며, 검증 대상 엔진과 코드를 공유하지 않음.
"""

from fractions import Fraction
from itertools import combinations, product
from math import factorial
from typing import List, Sequence, Union

from app.config.settings import settings
from app.modules.base_cases.subvalues import FunctionSignature
from app.modules.shared.errors import BudgetExceededError, ErrorCode, create_engine_error
from app.modules.shared.logger import get_oracle_logger
from app.modules.signs.parity import perm_sign
from app.modules.tensor_model.tensor import Scalar, SparseTensor, normalize_scalar

logger = get_oracle_logger()

DenseMatrix = Sequence[Sequence[Scalar]]


def ryser_permanent(matrix: SparseTensor) -> Scalar:
    """
    열 부분집합 위의 Ryser 포함-배제 (Gray code 순서로 방문)

    perm(M) = S 에 대한 (-1)^(n - |S|) prod_i sum_{j in S} M[i, j] 의 합
    """
    if matrix.order != 2 or not matrix.is_square:
        raise create_engine_error(ErrorCode.NOT_SQUARE, f"Ryser needs a square matrix, got {matrix.lengths}")
    n = matrix.n
    if n > settings.RYSER_MAX_N:
        raise BudgetExceededError(f"Ryser oracle limited to n <= {settings.RYSER_MAX_N}, got {n}")
    if n == 0:
        return 1

    dense = [[0] * n for _ in range(n)]
    for (i, j), value in matrix.entries.items():
        dense[i][j] = value

    row_sums = [0] * n
    in_subset = [False] * n
    total = 0
    size = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1  # Gray code 에서 바뀌는 열
        if in_subset[j]:
            in_subset[j] = False
            size -= 1
            for i in range(n):
                row_sums[i] -= dense[i][j]
        else:
            in_subset[j] = True
            size += 1
            for i in range(n):
                row_sums[i] += dense[i][j]
        term = 1
        for s in row_sums:
            term *= s
            if term == 0:
                break
        total += -term if (n - size) % 2 else term
    return normalize_scalar(total)


def naive_generalized(tensor: SparseTensor, signature: FunctionSignature) -> Scalar:
    """
    F(M) = 전단사 튜플 (pi_1..pi_d) 에 대한 prod_l eps_l(pi_l) prod_a M[a, pi_1(a), ..., pi_d(a)] 의 합

    전단사는 0 아닌 항목만 따라 행 단위로 열거.
    """
    if not tensor.is_square:
        raise create_engine_error(ErrorCode.NOT_SQUARE, f"tensor with lengths {tensor.lengths} is not square")
    n, d = tensor.n, tensor.free_axes
    if d != signature.d:
        raise create_engine_error(
            ErrorCode.INCOMPATIBLE_FUNCTION, f"signature for d={signature.d} on an order-{tensor.order} tensor"
        )
    if n > settings.NAIVE_MAX_N or d > settings.NAIVE_MAX_AXES:
        raise BudgetExceededError(
            f"naive enumeration limited to n <= {settings.NAIVE_MAX_N}, d <= {settings.NAIVE_MAX_AXES}",
            details={"n": n, "d": d, "budget": factorial(n) ** d},
        )

    rows = tensor.rows()
    total = 0
    images: List[List[int]] = [[] for _ in range(d)]
    used = [set() for _ in range(d)]

    def extend(a: int, weight: Scalar) -> None:
        nonlocal total
        if a == n:
            sign = 1
            for l, signed in enumerate(signature.signs):
                if signed:
                    sign *= perm_sign(images[l])
            total += sign * weight
            return
        for rest, value in rows.get(a, []):
            if any(x in used[l] for l, x in enumerate(rest)):
                continue
            for l, x in enumerate(rest):
                images[l].append(x)
                used[l].add(x)
            extend(a + 1, weight * value)
            for l, x in enumerate(rest):
                images[l].pop()
                used[l].discard(x)

    extend(0, 1)
    return normalize_scalar(total)


def exact_determinant(matrix: Union[DenseMatrix, SparseTensor]) -> Scalar:
    """
    Fraction-free Bareiss 소거

    정수 입력은 정수로 유지 (모든 나눗셈이 나누어떨어짐). 유리수 항목이
    하나라도 있으면 소거 전체를 Fraction 으로 수행.
    """
    if isinstance(matrix, SparseTensor):
        if matrix.order != 2 or not matrix.is_square:
            raise create_engine_error(ErrorCode.NOT_SQUARE, f"determinant of non-square {matrix.lengths}")
        rows = [list(row) for row in matrix.to_dense().tolist()]
    else:
        rows = [list(row) for row in matrix]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise create_engine_error(ErrorCode.NOT_SQUARE, "determinant of a non-square matrix")
    if n == 0:
        return 1

    integral = all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1) for row in rows for x in row)
    if integral:
        rows = [[int(x) for x in row] for row in rows]
    else:
        rows = [[Fraction(x) for x in row] for row in rows]

    sign = 1
    previous = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                numerator = rows[i][j] * pivot - rows[i][k] * rows[k][j]
                rows[i][j] = numerator // previous if integral else numerator / previous
            rows[i][k] = 0
        previous = pivot
    return normalize_scalar(sign * rows[n - 1][n - 1])


def naive_mixed_volume(system) -> Scalar:
    """
    MVol(z^1..z^n) = 조노토프마다 생성자 하나를 고른 |det(z^1_{j_1}, ..., z^n_{j_n})| 의 합

    Args:
        system: ZonotopeSystem

    Returns:
        정확한 혼합 부피
    """
    budget = 1
    for generators in system.zonotopes:
        budget *= len(generators)
    if budget > settings.NAIVE_MVOL_BUDGET:
        raise BudgetExceededError(
            f"naive mixed volume needs {budget} determinants, budget is {settings.NAIVE_MVOL_BUDGET}"
        )
    total = 0
    for choice in product(*system.zonotopes):
        total += abs(exact_determinant(choice))
    return normalize_scalar(total)


def zero_sum_subset_count(values: Sequence[int]) -> int:
    """합이 0 인 부분집합 (공집합 포함) 의 전수 개수"""
    count = 0
    for size in range(len(values) + 1):
        for subset in combinations(range(len(values)), size):
            if sum(values[i] for i in subset) == 0:
                count += 1
    return count
