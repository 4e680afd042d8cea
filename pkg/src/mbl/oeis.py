"""b-file ingestion and cross-checks for three integer sequences.

Sequence files use the b-file wire format: ASCII lines "<index> <value>",
'#' comments and blank lines ignored, LF or CRLF.  The package vendors
prefixes for the Markov numbers (A002559), Fibonacci numbers (A000045) and
Pell numbers (A000129) under mbl/data with a checksum manifest; a cache
directory (flag or MBL_CACHE_DIR) and explicit paths take precedence, and
network fetching is opt-in only.
"""

from __future__ import annotations

import hashlib
import json
import os
import urllib.request
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .markov import fibonacci, markov_numbers, pell

SEQUENCE_IDS = {
    "markov": "A002559",
    "fibonacci": "A000045",
    "pell": "A000129",
}

_GENERATORS = {
    "markov": lambda n: {i + 1: m for i, m in enumerate(markov_numbers(n))},
    "fibonacci": lambda n: {i: fibonacci(i) for i in range(n + 1)},
    "pell": lambda n: {i: pell(i) for i in range(n + 1)},
}

ENV_CACHE_DIR = "MBL_CACHE_DIR"


@dataclass(frozen=True)
class BFile:
    sequence_id: str
    entries: dict[int, int]
    source: str

    def first(self, count: int) -> list[int]:
        return list(self.entries.values())[:count]

    def __len__(self) -> int:
        return len(self.entries)


def parse_bfile(data: bytes | str, sequence_id: str = "?", source: str = "local") -> BFile:
    """Parse b-file text into an index -> value map.

    Indices must be strictly increasing; malformed lines report their line
    number.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    entries: dict[int, int] = {}
    last_index = None
    for lineno, raw in enumerate(data.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<index> <value>', got {raw!r}")
        try:
            index, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(
                f"line {lineno}: non-integer field in {raw!r}"
            ) from None
        if last_index is not None and index <= last_index:
            raise ValueError(f"line {lineno}: indices must strictly increase")
        entries[index] = value
        last_index = index
    if not entries:
        raise ValueError("empty b-file")
    return BFile(sequence_id, entries, source)


def _vendored_bytes(kind: str) -> bytes:
    seq = SEQUENCE_IDS[kind]
    name = f"b{seq[1:]}.txt"
    package = resources.files("mbl") / "data"
    blob = (package / name).read_bytes()
    manifest = json.loads((package / "manifest.json").read_text())
    digest = hashlib.sha256(blob).hexdigest()
    if manifest[name]["sha256"] != digest:
        raise OSError(f"vendored {name} fails its checksum")
    return blob


def bfile_url(kind: str) -> str:
    seq = SEQUENCE_IDS[kind]
    return f"https://oeis.org/{seq}/b{seq[1:]}.txt"


def _cache_path(kind: str, cache_dir: str | None) -> Path | None:
    directory = cache_dir or os.environ.get(ENV_CACHE_DIR)
    if not directory:
        return None
    seq = SEQUENCE_IDS[kind]
    return Path(directory) / f"b{seq[1:]}.txt"


def fetch_bfile(kind: str, cache_dir: str | None = None, timeout: float = 30.0) -> Path:
    """Download a b-file into the cache directory (network use is explicit)."""
    target = _cache_path(kind, cache_dir)
    if target is None:
        raise OSError("no cache directory configured (flag or MBL_CACHE_DIR)")
    target.parent.mkdir(parents=True, exist_ok=True)
    try:
        with urllib.request.urlopen(bfile_url(kind), timeout=timeout) as response:
            blob = response.read()
    except OSError as exc:
        raise OSError(f"network fetch of {bfile_url(kind)} failed: {exc}") from exc
    parse_bfile(blob, SEQUENCE_IDS[kind], "remote")  # validate before caching
    target.write_bytes(blob)
    return target


def load_bfile(
    kind: str,
    path: str | os.PathLike | None = None,
    cache_dir: str | None = None,
) -> BFile:
    """Load a b-file: explicit path, then cache, then the vendored copy."""
    if kind not in SEQUENCE_IDS:
        raise ValueError(f"unknown sequence kind {kind!r}")
    seq = SEQUENCE_IDS[kind]
    if path is not None:
        return parse_bfile(Path(path).read_bytes(), seq, str(path))
    cached = _cache_path(kind, cache_dir)
    if cached is not None and cached.exists():
        return parse_bfile(cached.read_bytes(), seq, str(cached))
    return parse_bfile(_vendored_bytes(kind), seq, "vendored")


@dataclass(frozen=True)
class CrossCheckReport:
    kind: str
    sequence_id: str
    n: int
    source: str
    ok: bool
    first_mismatch: tuple[int, int, int] | None  # (index, generated, file)

    def to_json(self) -> dict:
        mismatch = None
        if self.first_mismatch is not None:
            index, generated, filed = self.first_mismatch
            mismatch = {
                "index": index,
                "generated": str(generated),
                "file": str(filed),
            }
        return {
            "kind": self.kind,
            "sequence_id": self.sequence_id,
            "n": self.n,
            "source": self.source,
            "ok": self.ok,
            "first_mismatch": mismatch,
        }


def cross_check(
    kind: str,
    n: int,
    path: str | os.PathLike | None = None,
    cache_dir: str | None = None,
    bfile: BFile | None = None,
) -> CrossCheckReport:
    """Compare the generated sequence prefix against the b-file prefix.

    For "markov" the compared indices are 1..n; for the recurrences they are
    the first n+1 file indices starting at 0.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if bfile is None:
        bfile = load_bfile(kind, path=path, cache_dir=cache_dir)
    generated = _GENERATORS[kind](n)
    if any(i not in bfile.entries for i in generated):
        raise ValueError(
            f"b-file for {kind} ({bfile.source}) is shorter than n={n}"
        )
    mismatch = None
    for index, value in generated.items():
        if bfile.entries[index] != value:
            mismatch = (index, value, bfile.entries[index])
            break
    return CrossCheckReport(
        kind=kind,
        sequence_id=bfile.sequence_id,
        n=n,
        source=bfile.source,
        ok=mismatch is None,
        first_mismatch=mismatch,
    )
