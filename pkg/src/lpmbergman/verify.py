"""Cross-checks between the Q construction and the brute-force oracle, and corpus runs."""

from __future__ import annotations

import itertools
import random
import zlib
from dataclasses import dataclass
from typing import Iterable, Iterator

from lpmbergman.lpm import Lpm, land_neck_report
from lpmbergman.matroid import DEFAULT_MAX_BASES, CapExceeded
from lpmbergman.oracle import DEFAULT_MAX_FACES, enumerate_faces
from lpmbergman.paths import PathError, PathPair, mask_to_list, validate_pair
from lpmbergman.poset import FacePoset, label_key
from lpmbergman.qcomplex import (
    StructuralInconsistency,
    build_q_poset,
    complex_is_simplicial,
    face_is_simplicial,
    subface_counts,
)


@dataclass(frozen=True)
class CorpusSpec:
    mode: str  # "exhaustive" or "random"
    max_steps: int
    count: int = 0
    seed: int = 0
    max_paths: int = DEFAULT_MAX_BASES
    max_faces: int = DEFAULT_MAX_FACES

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown corpus mode {self.mode!r}")
        if self.max_steps < 2:
            raise ValueError("max_steps must be at least 2")


def _label_json(label) -> list[list[int]]:
    return [list(t) for t in label_key(label)]


def compare_posets(a: FacePoset, b: FacePoset) -> dict | None:
    """``None`` when equal, else the least differing label and what differs."""
    diff = a.labels() ^ b.labels()
    if diff:
        first = min(diff, key=label_key)
        side = "first" if first in a else "second"
        return {"label": _label_json(first), "reason": f"face only in the {side} poset"}
    bad = [lab for lab in a.labels() if a[lab].dim != b[lab].dim]
    if bad:
        first = min(bad, key=label_key)
        return {
            "label": _label_json(first),
            "reason": f"dimension {a[first].dim} vs {b[first].dim}",
        }
    # labels equal, so the inclusion orders agree as well
    return None


def connected_pairs(n: int) -> Iterator[PathPair]:
    """All connected pairs with exactly ``n`` steps, ordered by (r, p, q)."""
    for r in range(1, n):
        words = []
        for pos in itertools.combinations(range(n), r):
            w = ["E"] * n
            for i in pos:
                w[i] = "N"
            words.append("".join(w))
        words.sort()
        for p in words:
            for q in words:
                try:
                    pair = validate_pair(p, q)
                except PathError:
                    continue
                if pair.connected:
                    yield pair


def exhaustive_pairs(max_steps: int) -> Iterator[PathPair]:
    for n in range(2, max_steps + 1):
        yield from connected_pairs(n)


def random_connected_pair(m: int, r: int, rng: random.Random, max_tries: int = 100_000) -> PathPair:
    if m < 1 or r < 1:
        raise ValueError("m and r must both be positive")
    steps = ["N"] * r + ["E"] * m
    for _ in range(max_tries):
        a = steps[:]
        b = steps[:]
        rng.shuffle(a)
        rng.shuffle(b)
        try:
            pair = validate_pair("".join(a), "".join(b))
        except PathError:
            try:
                pair = validate_pair("".join(b), "".join(a))
            except PathError:
                continue
        if pair.connected:
            return pair
    raise RuntimeError(f"no connected pair found for m={m}, r={r} in {max_tries} tries")


def random_pairs(count: int, max_steps: int, seed: int) -> Iterator[PathPair]:
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, max_steps)
        r = rng.randint(1, n - 1)
        yield random_connected_pair(n - r, r, rng)


def corpus_pairs(spec: CorpusSpec) -> Iterator[PathPair]:
    if spec.mode == "exhaustive":
        return exhaustive_pairs(spec.max_steps)
    return random_pairs(spec.count, spec.max_steps, spec.seed)


def _check(name: str, ok: bool, witness=None) -> dict:
    return {"name": name, "pass": bool(ok), "witness": None if ok else witness}


def _index_labels(poset: FacePoset, order: list[int]) -> dict[int, object]:
    idx = {f: i for i, f in enumerate(order)}
    out = {}
    for lab, face in poset.faces.items():
        bits = 0
        for f in lab:
            bits |= 1 << idx[f]
        out[bits] = face
    return out


def _graded_below(by_bits: dict, bits: int) -> list[int]:
    counts: dict[int, int] = {}
    sub = bits
    while True:
        face = by_bits.get(sub)
        if face is not None and sub:
            counts[face.dim] = counts.get(face.dim, 0) + 1
        if sub == 0:
            break
        sub = (sub - 1) & bits
    top = max(counts) if counts else -1
    return [counts.get(d, 0) for d in range(top + 1)]


def rank_oracle_mismatch(lpm: Lpm, samples: int = 1000, seed: int = 0) -> list[int] | None:
    """First subset where the path DP rank and the basis-list rank differ."""
    bm = lpm.basis_matroid
    n = lpm.n
    if n <= 10:
        subsets: Iterable[int] = range(1 << n)
    else:
        rng = random.Random(seed)
        subsets = [rng.getrandbits(n) for _ in range(samples)]
    for a in subsets:
        if lpm.rank_mask(a) != bm.rank_mask(a):
            return mask_to_list(a)
    return None


def verify_instance(
    pair: PathPair,
    max_paths: int = DEFAULT_MAX_BASES,
    max_faces: int = DEFAULT_MAX_FACES,
    rank_samples: int = 1000,
) -> dict:
    """Run every check on one instance; caps raise ``CapExceeded``."""
    lpm = Lpm(pair, max_bases=max_paths)
    bm = lpm.basis_matroid
    checks = []

    miss = rank_oracle_mismatch(lpm, rank_samples, seed=zlib.crc32(f"{pair.p}|{pair.q}".encode()))
    checks.append(_check("rank_oracle", miss is None, {"subset": miss}))

    generic = sorted(bm.flacets_masks())
    ours = sorted(f.mask for f in lpm.flacets)
    missing = sorted(set(generic) ^ set(ours))
    checks.append(_check("flacets", not missing, {"flats": [mask_to_list(f) for f in missing[:1]]}))

    flacet_order = [f.mask for f in lpm.flacets]
    oracle = enumerate_faces(bm, generic, max_faces=max_faces)
    try:
        qposet = build_q_poset(lpm, max_faces)
    except StructuralInconsistency as exc:
        checks.append(_check("q_structure", False, {"error": str(exc)}))
        qposet = None

    if qposet is not None:
        checks.append(_check("q_structure", True))
        checks.append(_check("poset_equal", *_pair(compare_posets(qposet, oracle))))

        bad = [
            lab
            for lab, face in qposet.faces.items()
            if face_is_simplicial(lpm, face.omega) != (len(lab) == face.dim + 1)
        ]
        checks.append(
            _check("simplicial_faces", not bad, {"label": _label_json(min(bad, key=label_key))} if bad else None)
        )
        checks.append(
            _check(
                "complex_simplicial",
                complex_is_simplicial(lpm) == qposet.is_simplicial(),
                {"bay_criterion": complex_is_simplicial(lpm), "faces": qposet.is_simplicial()},
            )
        )
        by_bits = _index_labels(qposet, flacet_order)
        idx = {f: i for i, f in enumerate(flacet_order)}
        wrong = None
        for face in qposet.maximal_faces():
            bits = sum(1 << idx[f] for f in face.label)
            if subface_counts(face) != _graded_below(by_bits, bits):
                wrong = face.label
                break
        checks.append(_check("subface_counts", wrong is None, {"label": _label_json(wrong)} if wrong else None))

    mu = bm.mobius_number()
    chi = oracle.reduced_euler()
    checks.append(_check("euler_mobius", chi == mu, {"reduced_euler": chi, "mobius": mu}))
    checks.append(_check("pure", oracle.is_pure(), {"maximal_dims": sorted({f.dim for f in oracle.maximal_faces()})}))
    checks.append(_check("max_dim", oracle.max_dim() == lpm.rank - 2, {"max_dim": oracle.max_dim(), "rank": lpm.rank}))

    return {
        "p": pair.p,
        "q": pair.q,
        "m": pair.m,
        "r": pair.r,
        "status": "pass" if all(c["pass"] for c in checks) else "fail",
        "checks": checks,
        "land_necks": land_neck_report(lpm),
        "f_vector": oracle.f_vector(),
    }


def _pair(witness):
    return witness is None, witness


def _run_one(args) -> dict:
    pair, max_paths, max_faces = args
    try:
        return verify_instance(pair, max_paths, max_faces)
    except CapExceeded as exc:
        return {"p": pair.p, "q": pair.q, "m": pair.m, "r": pair.r, "status": "skip", "reason": str(exc)}


def run_corpus(spec: CorpusSpec, jobs: int = 1) -> Iterator[dict]:
    """Reports in corpus order; ``jobs > 1`` spreads instances over processes."""
    work = ((pair, spec.max_paths, spec.max_faces) for pair in corpus_pairs(spec))
    if jobs <= 1:
        yield from map(_run_one, work)
        return
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_run_one, work, chunksize=8)


def summarize(reports: Iterable[dict]) -> dict:
    counts = {"instances": 0, "pass": 0, "fail": 0, "skip": 0}
    failed_checks: dict[str, int] = {}
    land_neck_disagreements = 0
    for rep in reports:
        counts["instances"] += 1
        counts[rep["status"]] += 1
        for c in rep.get("checks", ()):
            if not c["pass"]:
                failed_checks[c["name"]] = failed_checks.get(c["name"], 0) + 1
        if rep.get("land_necks", {}).get("symmetric_difference"):
            land_neck_disagreements += 1
    counts["failed_checks"] = dict(sorted(failed_checks.items()))
    counts["land_neck_disagreements"] = land_neck_disagreements
    return counts
