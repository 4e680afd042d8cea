"""Global decreasing order of the capacities bc/a, and its irregularities.

Indexing triples by their maximal entry m_1 < m_2 < ... (uniqueness of the
maximal entry holds far beyond the range used here and is re-checked), the
capacities of each essential subtree form a strictly decreasing sequence
with irrational limit.  Juxtaposing those sequences in order of m_n gives
the global decreasing order, except where the juxtaposition inequality

    1/m_n^2 >= 1/m_{n'}^2 + 1/b_{n'}^2

fails; each failure forces the leading capacity of sequence n' to be swapped
in front of the sequences it overtakes.  Everything here is decided by exact
integer or rational comparisons.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .capacity import Capacity, QuadraticValue, capacity_to_json, width
from .errors import VerificationError
from .markov import (
    MarkovTriple,
    SubtreeSpec,
    enumerate_triples,
    markov_numbers,
    wedge,
)

ONE_THIRD = Fraction(1, 3)


@dataclass(frozen=True)
class ChainValues:
    """The two middle-entry chains descending from an apex (a, b, c).

    f_1 = 3ab - c, f_2 = 3a f_1 - b, then f_{j+1} = 3a f_j - f_{j-1};
    g is the same with b and c swapped.  Each consecutive pair (x_{j+1}, x_j)
    completes with a to a Markov triple, and for a > b > c the two chains
    interleave: g_1 < f_1 < g_2 < f_2 < ...
    """

    a: int
    b: int
    c: int
    f: tuple[int, ...]
    g: tuple[int, ...]

    @classmethod
    def build(cls, apex: MarkovTriple, k: int) -> "ChainValues":
        if k < 1:
            raise ValueError("k must be >= 1")
        a, b, c = apex

        def chain(first: int, seed: int) -> tuple[int, ...]:
            values = [first]
            prev = seed
            while len(values) < k:
                values.append(3 * a * values[-1] - prev)
                prev = values[-2]
            return tuple(values)

        return cls(a, b, c, chain(3 * a * b - c, b), chain(3 * a * c - b, c))

    def triples(self) -> list[MarkovTriple]:
        """Materialize the chain triples (validates the Markov equation)."""
        out = []
        for values, seed in ((self.f, self.b), (self.g, self.c)):
            prev = seed
            for i in range(len(values) - 1):
                out.append(MarkovTriple.from_values(values[i + 1], values[i], self.a))
                prev = values[i]
        return out


@dataclass(frozen=True)
class SpectrumRow:
    """Ordering data for one essential sequence."""

    n: int
    m: int
    apex: MarkovTriple
    b: int
    first_capacities: tuple[Capacity, ...]
    limit: QuadraticValue

    @property
    def degenerate(self) -> bool:
        """Rows 1 and 2 take b from the second-smallest-member convention."""
        return self.m in (1, 2)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": str(self.m),
            "apex": self.apex.to_json(),
            "b": str(self.b),
            "first_capacities": [capacity_to_json(w) for w in self.first_capacities],
            "limit": self.limit.to_json(),
            "degenerate_b": self.degenerate,
        }


@dataclass(frozen=True)
class IrregularityRecord:
    """A failure of the juxtaposition inequality, keyed by its lowest index."""

    n: int
    span: int
    kind: str

    def __post_init__(self):
        if self.span not in (1, 2):
            raise ValueError(f"span must be 1 or 2, got {self.span}")

    @property
    def n_prime(self) -> int:
        return self.n + self.span

    def to_json(self) -> dict:
        return {"n": self.n, "span": self.span, "n_prime": self.n_prime,
                "kind": self.kind}


@lru_cache(maxsize=16)
def _context(count: int):
    """First `count` Markov numbers with the apex triple of each."""
    numbers = tuple(markov_numbers(count))
    apex_by_max = {
        node.triple.a: node.triple for node in enumerate_triples(numbers[-1])
    }
    apexes = tuple(apex_by_max[m] for m in numbers)
    return numbers, apexes


def _scan_context(n_max: int):
    """Context wide enough that every scan window below n_max closes."""
    count = n_max + 8
    while True:
        numbers, apexes = _context(count)
        if numbers[-1] ** 2 >= 2 * numbers[n_max - 1] ** 2:
            return numbers, apexes
        count += 8


def _b_value(apex: MarkovTriple) -> int:
    # 3ac - b: the smallest middle entry below the apex; for the degenerate
    # rows 1 and 2 it coincides with the second-smallest member convention
    return 3 * apex.a * apex.c - apex.b


def _f1_value(apex: MarkovTriple) -> int:
    return 3 * apex.a * apex.b - apex.c


def _limit_of(m: int) -> QuadraticValue:
    # m is taken from the enumeration, so no Markov re-validation here
    return QuadraticValue(Fraction(3 * m * m, 2), Fraction(-m, 2), 9 * m * m - 4)


def _holds(n: int, n_prime: int, numbers, apexes) -> bool:
    m_n = numbers[n - 1]
    m_p = numbers[n_prime - 1]
    b_p = _b_value(apexes[n_prime - 1])
    return Fraction(1, m_n * m_n) >= Fraction(1, m_p * m_p) + Fraction(1, b_p * b_p)


def alternating_order(
    apex: MarkovTriple, depth: int
) -> list[tuple[MarkovTriple, Capacity]]:
    """Apex, then left/right children by level, with capacities verified
    strictly decreasing.

    This is the order of strictly decreasing capacities on the subtree
    preserving the apex maximum: go down left, right, down left, right, ...
    along increasing maximal entries.
    """
    spec = SubtreeSpec(apex, apex.a)
    nodes = wedge(spec, depth)
    sequence = [(node.triple, width(node.triple)) for node in nodes]
    for (t0, w0), (t1, w1) in zip(sequence, sequence[1:]):
        if not w0 > w1:
            raise VerificationError(
                f"capacity descent fails between {t0} (w={w0}) and {t1} (w={w1})"
            )
    return sequence


def verify_chain_inequalities(a: int, b: int, c: int, k: int) -> bool:
    """Exact check of the capacity inequalities along both chains of an apex.

    Covers the apex-to-child step, the five-term opening chain
    ac/g1 > ab/f1 > a g1/g2 > a f1/f2 > a g2/g3, and the two inductive-step
    inequalities for each j <= k.
    """
    apex = MarkovTriple(a, b, c)
    if a < 5:
        raise ValueError("chain inequalities need a >= 5 (so a > b > c)")
    cv = ChainValues.build(apex, k + 2)
    f, g = cv.f, cv.g

    def cap_f(j: int) -> Fraction:  # 1-indexed middle f_j
        return Fraction(a * f[j - 1], f[j])

    def cap_g(j: int) -> Fraction:
        return Fraction(a * g[j - 1], g[j])

    checks = [
        Fraction(b * c, a) > Fraction(a * c, g[0]),
        Fraction(a * c, g[0]) > Fraction(a * b, f[0]),
        Fraction(a * b, f[0]) > cap_g(1),
        cap_g(1) > cap_f(1),
        cap_f(1) > cap_g(2),
    ]
    for j in range(1, k + 1):
        checks.append(cap_f(j) < cap_g(j))
        checks.append(cap_g(j + 1) < cap_f(j))
    return all(checks)


def _essential_capacities(apex: MarkovTriple, k: int) -> tuple[Capacity, ...]:
    a = apex.a
    if a == 1:
        nodes = wedge(SubtreeSpec(apex, 1), k - 1)
        return tuple(width(node.triple) for node in nodes[:k])
    if a == 2:
        nodes = wedge(SubtreeSpec(apex, 2), k + 1)
        return tuple(width(node.triple) for node in nodes[2 : k + 2])
    cv = ChainValues.build(apex, k // 2 + 2)
    caps: list[Fraction] = []
    j = 1
    while len(caps) < k:
        caps.append(Fraction(a * cv.g[j - 1], cv.g[j]))
        if len(caps) < k:
            caps.append(Fraction(a * cv.f[j - 1], cv.f[j]))
        j += 1
    return tuple(caps)


def spectrum_rows(n_max: int, k: int = 4) -> list[SpectrumRow]:
    """Rows n = 1..n_max: apex, b_n, the first k capacities, and the limit.

    Construction re-checks that the capacities strictly decrease, stay above
    the row's limit, and that the limit exceeds 1/3.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    numbers, apexes = _context(n_max)
    rows = []
    for n in range(1, n_max + 1):
        m = numbers[n - 1]
        apex = apexes[n - 1]
        caps = _essential_capacities(apex, k)
        limit = _limit_of(m)
        for w0, w1 in zip(caps, caps[1:]):
            if not w0 > w1:
                raise VerificationError(f"row {n}: capacities fail to decrease")
        for w in caps:
            if limit.compare(w) >= 0:
                raise VerificationError(f"row {n}: capacity {w} not above limit")
        if limit.compare(ONE_THIRD) <= 0:
            raise VerificationError(f"row {n}: limit not above 1/3")
        rows.append(SpectrumRow(n, m, apex, _b_value(apex), caps, limit))
    return rows


def check_nn_inequality(n: int, n_prime: int) -> bool:
    """Whether sequence n precedes all of sequence n' in the global order."""
    if not 1 <= n < n_prime:
        raise ValueError("need 1 <= n < n_prime")
    numbers, apexes = _context(n_prime)
    return _holds(n, n_prime, numbers, apexes)


def scan_window(n: int, numbers) -> range:
    """Indices n' that could violate the inequality against n.

    Since b_{n'} > m_{n'}, a violation needs 1/m_n^2 < 2/m_{n'}^2, so only
    n' with m_{n'}^2 < 2 m_n^2 can offend; the window is therefore finite.
    """
    m_n = numbers[n - 1]
    end = n + 1
    while end <= len(numbers) and numbers[end - 1] ** 2 < 2 * m_n * m_n:
        end += 1
    return range(n + 1, end)


def find_irregularities(n_max: int) -> list[IrregularityRecord]:
    """All juxtaposition failures with lowest index <= n_max.

    Each offending sequence n' is recorded once, against the smallest n whose
    sequence it overtakes; the span n' - n must be 1 or 2 (anything else
    would be a new kind of irregularity and raises VerificationError).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    numbers, apexes = _scan_context(n_max)
    lowest_n: dict[int, int] = {}
    for n in range(1, n_max + 1):
        for n_prime in scan_window(n, numbers):
            if not _holds(n, n_prime, numbers, apexes):
                lowest_n[n_prime] = min(lowest_n.get(n_prime, n), n)
    records = []
    for n_prime in sorted(lowest_n):
        n = lowest_n[n_prime]
        span = n_prime - n
        if span > 2:
            raise VerificationError(
                f"irregularity at (n={n}, n'={n_prime}) spans {span} sequences;"
                " outside the catalogued patterns"
            )
        kind = (
            "first capacity of sequence n+1 moves ahead of sequence n"
            if span == 1
            else "first capacity of sequence n+2 moves ahead of sequences n and n+1"
        )
        records.append(IrregularityRecord(n, span, kind))
    records.sort(key=lambda rec: rec.n)
    return records


def verify_swap_pattern(rec: IrregularityRecord) -> bool:
    """Check that only the leading capacity of the higher sequence swaps.

    For the record's pair (n, n') this means: every spanned pair is violated,
    the leading capacity of sequence n' exceeds every capacity of each
    spanned sequence, the second capacity of sequence n' stays below each
    spanned sequence's infimum, and the swap reaches no further than n.
    Vacuously true if the pair is not violated at all.
    """
    n, n_prime = rec.n, rec.n_prime
    numbers, apexes = _scan_context(n_prime)
    if _holds(n, n_prime, numbers, apexes):
        return True
    m_p = numbers[n_prime - 1]
    b_p = _b_value(apexes[n_prime - 1])
    f1_p = _f1_value(apexes[n_prime - 1])
    w1_deficit_p = Fraction(1, m_p * m_p) + Fraction(1, b_p * b_p)
    w2_deficit_p = Fraction(1, m_p * m_p) + Fraction(1, f1_p * f1_p)
    for k in range(n, n_prime):
        if _holds(k, n_prime, numbers, apexes):
            return False
        m_k = numbers[k - 1]
        b_k = _b_value(apexes[k - 1])
        w1_deficit_k = Fraction(1, m_k * m_k) + Fraction(1, b_k * b_k)
        # larger deficit inside the square root means larger capacity
        if not w1_deficit_p > w1_deficit_k:
            return False
        if not Fraction(1, m_k * m_k) >= w2_deficit_p:
            return False
    if n > 1 and not _holds(n - 1, n_prime, numbers, apexes):
        return False
    return True


@dataclass(frozen=True)
class CompletenessReport:
    """Outcome of certifying the ordered prefix above a threshold."""

    threshold: Fraction
    n_max: int
    certified: bool
    records: tuple[IrregularityRecord, ...]
    swap_checks: tuple[tuple[int, bool], ...]
    active_sequences: int
    descent_depth: int
    tail_exact: tuple[tuple[int, bool], ...]
    tail_bound_index: int
    tail_bound_m: int
    failures: tuple[str, ...]
    conditions: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "threshold": capacity_to_json(self.threshold),
            "n_max": self.n_max,
            "certified": self.certified,
            "records": [rec.to_json() for rec in self.records],
            "swap_checks": [{"n": n, "ok": ok} for n, ok in self.swap_checks],
            "active_sequences": self.active_sequences,
            "descent_depth": self.descent_depth,
            "tail_exact": [{"n": n, "ok": ok} for n, ok in self.tail_exact],
            "tail_bound_index": self.tail_bound_index,
            "tail_bound_m": str(self.tail_bound_m),
            "failures": list(self.failures),
            "conditions": list(self.conditions),
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def ordered_prefix_complete_above(
    threshold: Fraction, n_max: int, descent_depth: int = 6
) -> CompletenessReport:
    """Certify that the juxtaposed-with-swaps order accounts for every
    capacity >= threshold.

    Exact sufficient conditions, all re-checked here:

    1. every pair (n, n') with n <= n_max inside the finite scan window
       either satisfies the juxtaposition inequality or belongs to a
       catalogued record whose swap pattern verifies;
    2. within each sequence the first `descent_depth` capacities strictly
       decrease and stay above the sequence limit (deeper capacities only
       ever decrease further along the verified chain recursions);
    3. sequences beyond n_max contribute nothing: their leading capacity is
       checked exactly to stay below the threshold until the index where
       m_n^2 >= 2 T^2/(3T - 1), beyond which even b = m cannot lift the
       leading capacity to T (and m_n is increasing).
    """
    threshold = Fraction(threshold)
    if threshold <= ONE_THIRD:
        raise ValueError(
            "threshold must exceed 1/3: it is an accumulation point of the "
            "capacities, so no finite description exists at or below it"
        )
    failures: list[str] = []
    # w_1(n) < T  <=>  1/m^2 + 1/b^2 < (3T-1)/T^2 ; limit_n >= T <=> 1/m^2 >= rhs
    rhs = (3 * threshold - 1) / (threshold * threshold)
    crude = 2 * threshold * threshold / (3 * threshold - 1)

    try:
        records = tuple(find_irregularities(n_max))
    except VerificationError as exc:
        records = ()
        failures.append(str(exc))
    swap_checks = []
    for rec in records:
        ok = verify_swap_pattern(rec)
        swap_checks.append((rec.n, ok))
        if not ok:
            failures.append(f"swap pattern at n={rec.n} (span {rec.span}) fails")

    try:
        rows = spectrum_rows(n_max, descent_depth)
    except VerificationError as exc:
        rows = []
        failures.append(str(exc))
    active = sum(
        1 for row in rows if Fraction(1, row.m * row.m) >= rhs
    )

    tail_exact = []
    count = n_max + 8
    numbers, apexes = _context(count)
    n = n_max + 1
    while Fraction(numbers[n - 1] ** 2) < crude:
        m_n = numbers[n - 1]
        b_n = _b_value(apexes[n - 1])
        ok = Fraction(1, m_n * m_n) + Fraction(1, b_n * b_n) < rhs
        tail_exact.append((n, ok))
        if not ok:
            failures.append(
                f"sequence {n} beyond n_max still reaches the threshold"
            )
        n += 1
        if n > len(numbers):
            count += 8
            numbers, apexes = _context(count)
    tail_bound_index = n
    tail_bound_m = numbers[n - 1]

    conditions = (
        "pairwise juxtaposition checked for every n <= n_max over the full "
        "finite scan window m_{n'}^2 < 2 m_n^2 (sufficient since b > m)",
        "each violation is a catalogued record whose swap pattern verified: "
        "only the leading capacity of the higher sequence moves, directly in "
        "front of the lowest spanned sequence",
        f"within-sequence strict descent above the limit verified exactly "
        f"for the first {descent_depth} capacities of every sequence",
        f"tail exclusion: leading capacities checked exactly for "
        f"n_max < n < {tail_bound_index}; from index {tail_bound_index} on, "
        f"m_n^2 >= 2T^2/(3T-1) makes every capacity fall below the threshold",
    )
    return CompletenessReport(
        threshold=threshold,
        n_max=n_max,
        certified=not failures,
        records=records,
        swap_checks=tuple(swap_checks),
        active_sequences=active,
        descent_depth=descent_depth,
        tail_exact=tuple(tail_exact),
        tail_bound_index=tail_bound_index,
        tail_bound_m=tail_bound_m,
        failures=tuple(failures),
        conditions=conditions,
    )
