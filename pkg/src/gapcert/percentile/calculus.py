import math

from gapcert.errors import DomainError


def confidence_of(epsilon, n):
    """Confidence ``1 - (1 - epsilon)**n`` that the best of ``n`` uniform draws
    lies in the ``100(1 - epsilon)``-th percentile."""
    if not 0.0 <= epsilon <= 1.0:
        raise DomainError(f"epsilon must lie in [0, 1], got {epsilon}")
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    if epsilon == 0.0:
        return 0.0
    if epsilon == 1.0:
        return 1.0
    # expm1/log1p keep precision when epsilon is small
    return -math.expm1(int(n) * math.log1p(-epsilon))


def min_samples(epsilon, confidence):
    """Smallest ``N`` with ``confidence_of(epsilon, N) >= confidence``."""
    if not 0.0 < epsilon <= 1.0:
        raise DomainError(f"epsilon must lie in (0, 1], got {epsilon}")
    if not 0.0 <= confidence < 1.0:
        raise DomainError(f"confidence must lie in [0, 1), got {confidence}")
    if epsilon == 1.0 or confidence == 0.0:
        return 1
    n = max(1, math.ceil(math.log1p(-confidence) / math.log1p(-epsilon)))
    # the closed form can be off by one at the boundary
    while n > 1 and confidence_of(epsilon, n - 1) >= confidence:
        n -= 1
    while confidence_of(epsilon, n) < confidence:
        n += 1
    return n
