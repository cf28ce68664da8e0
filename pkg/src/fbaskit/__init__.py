"""fbaskit: FBAS modeling, exact quorum-intersection checking, generative
sampling of quorum slices, phase-transition analytics, and a sweep harness."""

from .analytics import (
    RegimeVerdict,
    classify_regime,
    expected_quorum_count,
    falling_factorial,
    quorum_probability,
    upper_bound_lambda,
)
from .backend import backend_name
from .bitset import MAX_UNIVERSE, NodeSet
from .errors import (
    DeletedEverything,
    EmptyInput,
    EmptyUniverse,
    FbaskitError,
    IndexOutOfRange,
    InvalidParams,
    OwnerMissing,
    SchemaMismatch,
    UniverseMismatch,
    UniverseTooLarge,
)
from .fbas import (
    Fbas,
    delete_nodes,
    fbas_from_json,
    fbas_to_json,
    greatest_quorum_within,
    is_quorum,
    make_fbas,
)
from .genmodel import GenerativeParams, SampleMeta, sample_fbas, sample_fbas_with_meta, sample_poisson, sample_subset
from .qip import (
    QipStatus,
    QipVerdict,
    brute_force_disjoint_quorums,
    check_safety_after_deletion,
    find_disjoint_quorums,
    verify_witness,
)
from .rng import Xoshiro256, derive_seed, splitmix64
from .slush import SlushConfig, SlushOutcome, run_slush, slush_round
from .sweep import (
    SweepConfig,
    SweepRecord,
    cell_seed,
    run_sweep,
    summarize_sweep,
    sweep_records_to_csv,
    write_sweep_csv,
)

__version__ = "0.1.0"
