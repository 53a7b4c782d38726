# experiments.py

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field, computed_field

from bitgraph_module.bitgraph import BitGraphError, equivalent
from bitgraph_module.fold import ReconstructionError, crossword_multigraph, reconstruct_grid
from conditions_module.conditions import ConditionReport, check_all
from enumeration_module.masks import (
    VoidMask,
    check_limit,
    mask_chunks,
    region_size,
    sample_masks,
    sample_valid_grids,
)
from grid_module.grid import Grid, StructureReport, serialize_grid, validate
from network_module.licn import build_licn, fundamental_graph
from voiding_module.voiding import VoidingError, voided_from_grid


logger = logging.getLogger(__name__)

DEFAULT_CHUNK_SIZE = 1024


class ExperimentKind(str, Enum):
    COUNT = "count"
    NECESSITY = "necessity"
    SUFFICIENCY = "sufficiency"
    ROUNDTRIP = "roundtrip"


class MaskRecord(BaseModel):
    """One examined mask, its grid text and what failed for it."""

    bits: int
    grid: str
    failed_rules: Dict[str, str] = Field(default_factory=dict)
    failed_conditions: Dict[str, Optional[str]] = Field(default_factory=dict)
    error: Optional[str] = None


class ExperimentResult(BaseModel):
    kind: ExperimentKind
    n: int
    exhaustive: bool
    seed: Optional[int] = None
    total_examined: int = 0
    attempts: int = 0
    valid_grids: int = 0
    condition_pass: int = 0
    valid_not_pass: List[MaskRecord] = Field(default_factory=list)
    pass_not_valid: List[MaskRecord] = Field(default_factory=list)
    equivalence_failures: List[MaskRecord] = Field(default_factory=list)
    roundtrip_failures: List[MaskRecord] = Field(default_factory=list)
    pipeline_errors: List[MaskRecord] = Field(default_factory=list)
    elapsed_seconds: float = 0.0

    @computed_field
    @property
    def mismatches(self) -> List[MaskRecord]:
        """Masks where grid validity and condition pass disagree."""
        return sorted(self.valid_not_pass + self.pass_not_valid, key=lambda r: r.bits)

    def comparable(self) -> dict:
        return self.model_dump(exclude={"elapsed_seconds"})


@dataclass
class ChunkTally:
    examined: int = 0
    valid: int = 0
    passed: int = 0
    valid_not_pass: List[MaskRecord] = field(default_factory=list)
    pass_not_valid: List[MaskRecord] = field(default_factory=list)
    equivalence_failures: List[MaskRecord] = field(default_factory=list)
    roundtrip_failures: List[MaskRecord] = field(default_factory=list)
    pipeline_errors: List[MaskRecord] = field(default_factory=list)

    def merge(self, other: "ChunkTally") -> None:
        self.examined += other.examined
        self.valid += other.valid
        self.passed += other.passed
        self.valid_not_pass.extend(other.valid_not_pass)
        self.pass_not_valid.extend(other.pass_not_valid)
        self.equivalence_failures.extend(other.equivalence_failures)
        self.roundtrip_failures.extend(other.roundtrip_failures)
        self.pipeline_errors.extend(other.pipeline_errors)


def _record(mask: VoidMask, text: str, structure: StructureReport, conditions: Optional[ConditionReport]) -> MaskRecord:
    rules = {
        rule.value: verdict.detail or str(verdict.witness)
        for rule, verdict in structure.verdicts.items()
        if not verdict.passed
    }
    failed = {}
    if conditions is not None:
        failed = {cid.value: conditions.verdicts[cid].witness for cid in conditions.failures()}
    return MaskRecord(bits=mask.bits, grid=text, failed_rules=rules, failed_conditions=failed)


def examine_mask(kind: ExperimentKind, mask: VoidMask, tally: ChunkTally) -> None:
    tally.examined += 1
    grid = mask.to_grid()
    structure = validate(grid)
    valid = structure.valid
    if valid:
        tally.valid += 1

    if kind is ExperimentKind.COUNT:
        return
    if not valid and kind is not ExperimentKind.SUFFICIENCY:
        return

    text = serialize_grid(grid)
    try:
        _examine_graphs(kind, mask, grid, text, structure, tally)
    except (BitGraphError, VoidingError) as e:
        # keep the run going; the mask is reported with its error
        logger.error("Mask %d of n=%d failed in the graph pipeline: %s", mask.bits, mask.n, e)
        record = _record(mask, text, structure, None)
        record.error = f"{type(e).__name__}: {e}"
        tally.pipeline_errors.append(record)


def _examine_graphs(
    kind: ExperimentKind, mask: VoidMask, grid: Grid, text: str, structure: StructureReport, tally: ChunkTally
) -> None:
    voided = voided_from_grid(grid)

    if kind is ExperimentKind.ROUNDTRIP:
        direct = crossword_multigraph(fundamental_graph(build_licn(grid)))
        try:
            exact = reconstruct_grid(direct) == grid and reconstruct_grid(voided) == grid
        except ReconstructionError:
            exact = False
        if not exact:
            tally.roundtrip_failures.append(_record(mask, text, structure, None))
        return

    if kind is ExperimentKind.NECESSITY:
        direct = crossword_multigraph(fundamental_graph(build_licn(grid)))
        if not equivalent(voided, direct, ignore_isolated=True):
            tally.equivalence_failures.append(_record(mask, text, structure, None))

    report = check_all(voided, mask.n)
    if report.passed:
        tally.passed += 1
    if structure.valid and not report.passed:
        tally.valid_not_pass.append(_record(mask, text, structure, report))
    elif report.passed and not structure.valid:
        tally.pass_not_valid.append(_record(mask, text, structure, report))


# a chunk is either a contiguous bit range or an explicit list of sampled bits
Chunk = Union[Tuple[int, int], Sequence[int]]


def examine_chunk(task: Tuple[ExperimentKind, int, Chunk]) -> ChunkTally:
    kind, n, chunk = task
    bits_iter: Iterable[int] = range(*chunk) if isinstance(chunk, tuple) else chunk
    tally = ChunkTally()
    for bits in bits_iter:
        examine_mask(kind, VoidMask(n, bits), tally)
    return tally


def _run_chunks(kind: ExperimentKind, n: int, chunks: Iterable[Chunk], jobs: int) -> ChunkTally:
    tasks = ((kind, n, chunk) for chunk in chunks)
    total = ChunkTally()
    if jobs <= 1:
        results = map(examine_chunk, tasks)
        for k, tally in enumerate(results, start=1):
            total.merge(tally)
            logger.debug("Chunk %d merged (%d examined so far)", k, total.examined)
        return total

    # map keeps chunk order, so the merge matches the serial run
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for k, tally in enumerate(pool.map(examine_chunk, tasks), start=1):
            total.merge(tally)
            logger.debug("Chunk %d merged (%d examined so far)", k, total.examined)
    return total


def _split(bits: List[int], chunk_size: int) -> List[List[int]]:
    return [bits[i:i + chunk_size] for i in range(0, len(bits), chunk_size)]


def run_experiment(
    kind: Union[ExperimentKind, str],
    n: int,
    sample: Optional[int] = None,
    seed: Optional[int] = None,
    limit: Optional[int] = None,
    jobs: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    density: float = 0.5,
    max_attempts_factor: int = 400,
) -> ExperimentResult:
    """
    Exhaustive over all masks when `sample` is None, otherwise over `sample`
    seeded masks. Sampled count and sufficiency runs draw masks as they come;
    sampled necessity and roundtrip runs draw valid grids only.
    """
    kind = ExperimentKind(kind)
    started = time.perf_counter()
    exhaustive = sample is None
    attempts = 0

    if exhaustive:
        check_limit(n, limit)
        chunks: List[Chunk] = list(mask_chunks(n, chunk_size))
        attempts = 1 << region_size(n)
        logger.info("%s n=%d: %d masks in %d chunks, jobs=%d", kind.value, n, attempts, len(chunks), jobs)
    else:
        if seed is None:
            raise ValueError("Sampled experiments need a seed")
        if kind in (ExperimentKind.COUNT, ExperimentKind.SUFFICIENCY):
            masks = sample_masks(n, sample, seed, density)
            attempts = len(masks)
        else:
            masks, attempts = sample_valid_grids(n, sample, seed, density, max_attempts_factor)
        chunks = _split([m.bits for m in masks], chunk_size)
        logger.info("%s n=%d: %d sampled masks, seed=%d, jobs=%d", kind.value, n, len(masks), seed, jobs)

    tally = _run_chunks(kind, n, chunks, jobs)
    result = ExperimentResult(
        kind=kind,
        n=n,
        exhaustive=exhaustive,
        seed=None if exhaustive else seed,
        total_examined=tally.examined,
        attempts=attempts,
        valid_grids=tally.valid,
        condition_pass=tally.passed,
        valid_not_pass=tally.valid_not_pass,
        pass_not_valid=tally.pass_not_valid,
        equivalence_failures=tally.equivalence_failures,
        roundtrip_failures=tally.roundtrip_failures,
        pipeline_errors=tally.pipeline_errors,
        elapsed_seconds=time.perf_counter() - started,
    )
    logger.info(
        "%s n=%d done: examined=%d valid=%d pass=%d mismatches=%d in %.1fs",
        kind.value,
        n,
        result.total_examined,
        result.valid_grids,
        result.condition_pass,
        len(result.mismatches),
        result.elapsed_seconds,
    )
    return result


def count_valid_grids(n: int, limit: Optional[int] = None, jobs: int = 1, chunk_size: int = DEFAULT_CHUNK_SIZE) -> int:
    return run_experiment(ExperimentKind.COUNT, n, limit=limit, jobs=jobs, chunk_size=chunk_size).valid_grids


def estimate_valid_grids(n: int, sample: int, seed: int) -> float:
    """Uniform-sample estimate of the number of valid grids at sizes beyond the exhaustive limit."""
    result = run_experiment(ExperimentKind.COUNT, n, sample=sample, seed=seed, density=0.5)
    if result.total_examined == 0:
        return 0.0
    return result.valid_grids / result.total_examined * (1 << region_size(n))


def necessity_experiment(n: int, sample: Optional[int] = None, seed: Optional[int] = None, **kwargs) -> ExperimentResult:
    return run_experiment(ExperimentKind.NECESSITY, n, sample=sample, seed=seed, **kwargs)


def sufficiency_experiment(n: int, **kwargs) -> ExperimentResult:
    return run_experiment(ExperimentKind.SUFFICIENCY, n, **kwargs)


def reconstruct_roundtrip_experiment(
    n: int, sample: Optional[int] = None, seed: Optional[int] = None, **kwargs
) -> ExperimentResult:
    return run_experiment(ExperimentKind.ROUNDTRIP, n, sample=sample, seed=seed, **kwargs)
