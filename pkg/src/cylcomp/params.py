"""Row moduli, middle/ear lengths, and the four structural properties.

A parameter set fixes a cylinder of k rows and L + 2r columns together with
one modulus per row.  In recipe mode the moduli come from pairwise coprime
bases P_1..P_k via

    m_i = 2(k+c) * P_i * ... * P_{i+c}      (indices cyclic mod k)
    L   = 2(k+c) * P_1 * ... * P_k
    r   = k + c + 1

and then satisfy all of P1-P4 below.  Explicit mode accepts arbitrary moduli
(each > 2 and dividing L) so that desk-scale instances stay cheap; P1-P4 are
then reported rather than enforced.
"""

from dataclasses import dataclass
from itertools import combinations
from math import gcd, lcm, prod

from .errors import InvalidRange, NonDivisorModulus, NotEnoughCoprimes


@dataclass(frozen=True)
class CompressionParams:
    k: int
    c: int
    moduli: tuple
    middle_length: int
    ear_length: int
    bases: tuple = None
    mode: str = "explicit"

    def __post_init__(self):
        if self.k < 2:
            raise InvalidRange(f"need k >= 2, got {self.k}")
        if not 1 <= self.c <= self.k - 1:
            raise InvalidRange(f"need 1 <= c <= k-1, got c={self.c}, k={self.k}")
        if len(self.moduli) != self.k:
            raise InvalidRange("need one modulus per row")
        if self.ear_length < 1:
            raise InvalidRange("ear length must be positive")
        for m in self.moduli:
            if m <= 2:
                raise InvalidRange(f"modulus {m} must exceed 2")
            if self.middle_length % m != 0:
                raise NonDivisorModulus(
                    f"modulus {m} does not divide middle length {self.middle_length}")

    @property
    def width(self):
        return self.middle_length + 2 * self.ear_length

    def modulus(self, row):
        """Modulus of a 1-based row index, cyclic."""
        return self.moduli[(row - 1) % self.k]

    def g(self, rows):
        """gcd of the moduli over a set of 1-based rows."""
        return gcd(*(self.modulus(i) for i in rows)) if rows else 0

    def pair_gcd(self, row):
        """gcd of the moduli of rows (row, row+1), cyclic."""
        return gcd(self.modulus(row), self.modulus(row + 1))


@dataclass(frozen=True)
class PropertyReport:
    """Per-property verdicts for P1-P4, with a witness for each failure."""
    p1: bool
    p2: bool
    p3: bool
    p4: bool
    failures: tuple

    @property
    def all_hold(self):
        return self.p1 and self.p2 and self.p3 and self.p4


def _primes_in(lo, hi):
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, int(hi ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p:: p] = bytearray(len(sieve[p * p:: p]))
    return [p for p in range(lo, hi + 1) if sieve[p]]


def select_coprime_bases(n, k):
    """Smallest k primes in [n, 2n]; primes are pairwise coprime by default."""
    if n < 2 or k < 1:
        raise InvalidRange(f"need n >= 2 and k >= 1, got n={n}, k={k}")
    primes = _primes_in(n, 2 * n)
    if len(primes) < k:
        raise NotEnoughCoprimes(
            f"only {len(primes)} primes in [{n}, {2 * n}], need {k}")
    return primes[:k]


def parameters_from_bases(k, c, bases):
    """Recipe-mode parameters from explicitly supplied coprime bases."""
    if not 1 <= c <= k - 1:
        raise InvalidRange(f"need 1 <= c <= k-1, got c={c}, k={k}")
    if len(bases) != k:
        raise InvalidRange("need one base per row")
    for a, b in combinations(bases, 2):
        if gcd(a, b) != 1:
            raise InvalidRange(f"bases {a} and {b} are not coprime")
    scale = 2 * (k + c)
    moduli = tuple(
        scale * prod(bases[(i + j) % k] for j in range(c + 1)) for i in range(k))
    return CompressionParams(
        k=k,
        c=c,
        moduli=moduli,
        middle_length=scale * prod(bases),
        ear_length=k + c + 1,
        bases=tuple(bases),
        mode="recipe",
    )


def derive_parameters(n, k, c):
    """Full recipe: sieve coprime bases from [n, 2n], then apply the recipe."""
    if not 1 <= c <= k - 1:
        raise InvalidRange(f"need 1 <= c <= k-1, got c={c}, k={k}")
    if n <= 4 * k + 2:
        raise InvalidRange(f"need n > 4k+2 = {4 * k + 2}, got {n}")
    return parameters_from_bases(k, c, select_coprime_bases(n, k))


def make_explicit_parameters(k, c, moduli, middle_length, ear_length):
    """Toy mode: arbitrary moduli, properties reported but not enforced."""
    return CompressionParams(
        k=k,
        c=c,
        moduli=tuple(moduli),
        middle_length=middle_length,
        ear_length=ear_length,
        mode="explicit",
    )


def verify_parameter_properties(params):
    """Check P1-P4.

    P1: gcd of all moduli is at least 2(k+c).
    P2: for every row i and a, b >= 1 with a+b <= c+1, m_i divides
        lcm(g_[i-a,i], g_[i,i+b]) over cyclic row intervals.
    P3: every row subset of size >= k-c has lcm of moduli equal to L.
    P4: r > k+c.
    """
    k, c = params.k, params.c
    failures = []

    p1 = params.g(range(1, k + 1)) >= 2 * (k + c)
    if not p1:
        failures.append(("P1", params.g(range(1, k + 1))))

    p2 = True
    for i in range(1, k + 1):
        for a in range(1, c + 1):
            for b in range(1, c + 2 - a):
                left = params.g([(i - d - 1) % k + 1 for d in range(a + 1)])
                right = params.g([(i + d - 1) % k + 1 for d in range(b + 1)])
                if lcm(left, right) % params.modulus(i) != 0:
                    p2 = False
                    failures.append(("P2", (i, a, b, left, right)))

    p3 = True
    for size in range(max(1, k - c), k + 1):
        for subset in combinations(range(1, k + 1), size):
            if lcm(*(params.modulus(i) for i in subset)) != params.middle_length:
                p3 = False
                failures.append(("P3", subset))

    p4 = params.ear_length > k + c
    if not p4:
        failures.append(("P4", params.ear_length))

    return PropertyReport(p1=p1, p2=p2, p3=p3, p4=p4, failures=tuple(failures))
