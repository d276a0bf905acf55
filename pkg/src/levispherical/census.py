"""Whole-group sphericality censuses with deterministic JSONL output.

A census classifies (w, I) pairs for every element w of a Weyl group:
either every subset I of the left descent set (mode "all-subsets") or just
I = D_L(w) (mode "full-descent-only").  Records stream out as JSON lines

    {"type": "F4", "w": [...], "len": 13, "levi": [...], "d": [...],
     "spherical": true}

in a fixed order: elements by length then lexicographic matrix encoding,
subsets of the descent set in binary-counting order.  Reruns are
byte-identical.

cross_check validates records against explicit character computations: a
spherical record must be multiplicity-free for every weight of the battery
(a violation is raised as InconsistencyError), and a non-spherical record
is handed to witness_search, whose failure to find a witness is merely
inconclusive.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Iterable, Optional, Sequence

from .characters import (
    Weight,
    is_dominant,
    is_multiplicity_free,
    witness_search,
)
from .rootsys import CartanType, RootSystemSpec, build_root_system
from .sphericality import classify
from .weyl import (
    DEFAULT_ENUM_CAP,
    CapExceeded,
    WeylElement,
    classical_group_order,
    enumerate_group,
    from_word,
    left_descents,
)

LEVI_MODES = ("all-subsets", "full-descent-only")


@dataclass(frozen=True)
class CensusRecord:
    cartan_type: CartanType
    w_word: tuple[int, ...]
    length: int
    levi: tuple[int, ...]
    d_word: tuple[int, ...]
    spherical: bool

    def to_json_line(self) -> str:
        return json.dumps(
            {
                "type": str(self.cartan_type),
                "w": list(self.w_word),
                "len": self.length,
                "levi": list(self.levi),
                "d": list(self.d_word),
                "spherical": self.spherical,
            }
        )

    @classmethod
    def from_json_line(cls, spec: RootSystemSpec, line: str) -> "CensusRecord":
        obj = json.loads(line)
        if obj["type"] != str(spec.cartan_type):
            raise ValueError(
                f"record type {obj['type']!r} does not match {spec.cartan_type}"
            )
        return cls(
            cartan_type=spec.cartan_type,
            w_word=tuple(obj["w"]),
            length=obj["len"],
            levi=tuple(obj["levi"]),
            d_word=tuple(obj["d"]),
            spherical=obj["spherical"],
        )


@dataclass
class CensusSummary:
    cartan_type: CartanType
    levi_mode: str
    group_order: int
    pair_count: int
    spherical_count: int
    toric_count: int
    by_length: dict[int, dict[str, int]] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "type": str(self.cartan_type),
            "levi_mode": self.levi_mode,
            "group_order": self.group_order,
            "pair_count": self.pair_count,
            "spherical_count": self.spherical_count,
            "toric_count": self.toric_count,
            "by_length": {
                str(k): dict(self.by_length[k]) for k in sorted(self.by_length)
            },
        }


def _element_pairs(spec: RootSystemSpec, w: WeylElement, levi_mode: str):
    """The classification results for one element, in deterministic order."""
    descents = sorted(left_descents(spec, w))
    if levi_mode == "full-descent-only":
        yield classify(spec, w, descents)
        return
    for mask in range(1 << len(descents)):
        subset = [descents[b] for b in range(len(descents)) if mask >> b & 1]
        yield classify(spec, w, subset)


def _classify_elements(
    spec: RootSystemSpec, elements: Iterable[WeylElement], levi_mode: str
):
    """(line, length, spherical, toric) tuples plus per-element grouping."""
    for w in elements:
        first = True
        for result in _element_pairs(spec, w, levi_mode):
            rec = CensusRecord(
                cartan_type=spec.cartan_type,
                w_word=result.w_word,
                length=result.len_w,
                levi=result.levi,
                d_word=result.d_word,
                spherical=result.spherical,
            )
            # An element is toric iff w itself is a standard Coxeter element.
            toric = first and rec.length == len(set(rec.w_word))
            yield rec, first, toric
            first = False


def _census_chunk(args) -> tuple[list[str], dict]:
    """Worker body: classify a contiguous chunk of elements."""
    type_str, levi_mode, matrices = args
    spec = build_root_system(type_str)
    lines: list[str] = []
    stats = {
        "pairs": 0,
        "spherical": 0,
        "toric": 0,
        "by_length": {},
    }
    elements = (WeylElement(rows) for rows in matrices)
    for rec, first, toric in _classify_elements(spec, elements, levi_mode):
        lines.append(rec.to_json_line())
        per = stats["by_length"].setdefault(
            rec.length, {"elements": 0, "pairs": 0, "spherical": 0}
        )
        if first:
            per["elements"] += 1
        per["pairs"] += 1
        stats["pairs"] += 1
        if rec.spherical:
            per["spherical"] += 1
            stats["spherical"] += 1
        if toric:
            stats["toric"] += 1
    return lines, stats


def run_census(
    spec: RootSystemSpec,
    *,
    levi_mode: str = "all-subsets",
    cap: int = DEFAULT_ENUM_CAP,
    sink: Optional[IO[str]] = None,
    jobs: int = 1,
    records_out: Optional[list[CensusRecord]] = None,
) -> CensusSummary:
    """Classify the whole group, streaming JSONL records to sink.

    The group order is checked against cap before any output; enumeration is
    never silently truncated.  With jobs > 1 the element list is split into
    contiguous chunks handled by worker processes, and output order (hence
    byte content) is identical to the single-process run.

    records_out, if given, additionally receives every CensusRecord.
    """
    if levi_mode not in LEVI_MODES:
        raise ValueError(f"levi_mode must be one of {LEVI_MODES}")
    order = classical_group_order(spec)
    if order > cap:
        raise CapExceeded(
            f"group of type {spec.cartan_type} has order {order}, "
            f"over the cap {cap}; raise the cap to run this census"
        )

    summary = CensusSummary(
        cartan_type=spec.cartan_type,
        levi_mode=levi_mode,
        group_order=order,
        pair_count=0,
        spherical_count=0,
        toric_count=0,
    )

    def absorb(lines: list[str], stats: dict) -> None:
        for line in lines:
            if sink is not None:
                sink.write(line + "\n")
            if records_out is not None:
                records_out.append(CensusRecord.from_json_line(spec, line))
        summary.pair_count += stats["pairs"]
        summary.spherical_count += stats["spherical"]
        summary.toric_count += stats["toric"]
        for ln, per in stats["by_length"].items():
            agg = summary.by_length.setdefault(
                ln, {"elements": 0, "pairs": 0, "spherical": 0}
            )
            for k in per:
                agg[k] += per[k]

    elements = list(enumerate_group(spec, cap))

    if jobs <= 1:
        absorb(*_census_chunk((str(spec.cartan_type), levi_mode,
                               [w.rows for w in elements])))
    else:
        matrices = [w.rows for w in elements]
        chunk_size = max(1, (len(matrices) + jobs * 4 - 1) // (jobs * 4))
        chunks = [
            (str(spec.cartan_type), levi_mode, matrices[i : i + chunk_size])
            for i in range(0, len(matrices), chunk_size)
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for lines, stats in pool.map(_census_chunk, chunks):
                absorb(lines, stats)
    return summary


class InconsistencyError(RuntimeError):
    """A spherical census record failed a multiplicity-freeness check."""

    def __init__(self, record: CensusRecord, lam: Weight, mu, multiplicity):
        self.record = record
        self.lam = lam
        self.mu = mu
        self.multiplicity = multiplicity
        super().__init__(
            f"spherical record w={list(record.w_word)} levi={list(record.levi)} "
            f"fails multiplicity-freeness at lambda={list(lam)}: "
            f"mu={list(mu)} has multiplicity {multiplicity}"
        )


@dataclass
class CrossCheckReport:
    records_seen: int
    sampled: int
    spherical_checked: int
    battery_size: int
    witness_found: int
    witness_inconclusive: int
    sample_rate: float

    def to_json_dict(self) -> dict:
        return {
            "records_seen": self.records_seen,
            "sampled": self.sampled,
            "spherical_checked": self.spherical_checked,
            "battery_size": self.battery_size,
            "witness_found": self.witness_found,
            "witness_inconclusive": self.witness_inconclusive,
            "sample_rate": self.sample_rate,
        }


def cross_check(
    spec: RootSystemSpec,
    records: Iterable[CensusRecord],
    battery: Sequence[Weight],
    sample: Optional[float] = None,
    *,
    witness_cap: int = 2,
    seed: int = 0,
) -> CrossCheckReport:
    """Validate census records by explicit character computation.

    Spherical records must be multiplicity-free for every battery weight;
    any failure raises InconsistencyError naming (w, I, lambda, mu).
    Non-spherical records are handed to witness_search; not finding a
    witness within the budget is counted as inconclusive, not an error.

    Sampling is deterministic given the seed.  The default rate is 1.0 for
    groups of at most 500 elements and 0.05 above that.
    """
    battery = [tuple(lam) for lam in battery]
    for lam in battery:
        if len(lam) != spec.rank or not is_dominant(lam):
            raise ValueError(f"battery weight {lam} is not dominant")
    if sample is None:
        sample = 1.0 if classical_group_order(spec) <= 500 else 0.05
    rng = random.Random(seed)
    report = CrossCheckReport(
        records_seen=0,
        sampled=0,
        spherical_checked=0,
        battery_size=len(battery),
        witness_found=0,
        witness_inconclusive=0,
        sample_rate=sample,
    )
    for rec in records:
        report.records_seen += 1
        if rng.random() >= sample:
            continue
        report.sampled += 1
        w = from_word(spec, rec.w_word)
        if rec.spherical:
            for lam in battery:
                chk = is_multiplicity_free(spec, lam, w, rec.levi)
                if not chk:
                    raise InconsistencyError(rec, lam, chk.witness, chk.multiplicity)
            report.spherical_checked += 1
        else:
            found = witness_search(spec, w, rec.levi, witness_cap)
            if found is None:
                report.witness_inconclusive += 1
            else:
                report.witness_found += 1
    return report
