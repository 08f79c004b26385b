"""Power allocation for amplify-and-forward RF probing networks.

The package models a transmit array illuminating a handful of scene
objects, a mesh of single-antenna amplify-and-forward sensors, and a
multi-antenna fusion center. Transmit powers (and optionally the sensor
amplification gains) are chosen to meet per-target SINR demands at
minimum total resource, via successive convexification of a signomial
program into geometric programs.
"""

from .beamforming import (
    Precoder,
    SteeringVector,
    incident_powers,
    mrt_precoder,
    object_steering_matrix,
    steering_vector,
)
from .combining import (
    Combiner,
    CombinerScheme,
    EquivalentChannels,
    NoiseMismatch,
    RankDeficient,
    equivalent_channels,
    mrc_combiner,
    mrc_sinr_closed_form,
    mutual_information,
    sinr,
    zf_combiner,
)
from .posynomials import (
    CrossTermReport,
    EmptyPosynomial,
    Monomial,
    MrcSinrTerms,
    Posynomial,
    Signomial,
    UnboundVariable,
    VarId,
    VarKind,
    amplification,
    build_mrc_sinr_signomial,
    condensation_weights,
    condense,
    evaluate,
    lemma1_check,
    linear_posynomial,
    sinr_ratio_constraint,
    split_signomial,
    tx_power,
)
from .report import CSV_HEADER, ResultRow, format_row, read_rows, to_db, write_rows
from .scenario import (
    ParseError,
    ValidationError,
    bundled_scenario_path,
    parse_scenario,
    parse_scenario_with_seed,
)
from .scene import (
    ArrayGeometry,
    ChannelSet,
    FusionCenter,
    ObjectKind,
    Scene,
    SceneIssue,
    SceneObject,
    SensorNetwork,
    generate_channels,
    scene_is_valid,
    validate_scene,
)
from .solver import (
    GpProblem,
    Infeasible,
    NumericalFailure,
    SolveTrace,
    SpProblem,
    StartInfeasible,
    Termination,
    build_joint_mrc_problem,
    build_txonly_problem,
    find_feasible_start,
    max_constraint_ratio,
    solve_gp,
    solve_sp,
)

__version__ = "0.1.0"
