"""Racing mirror-neuron decision simulator.

Neurons built from profile scores roll a motor cycloid and a sensory
epicycloid toward a deadline; their wrapped phases give fuzzy yes/no
responses that are pooled into a group prescription.
"""

from .consensus import (
    BoostedOutcome,
    BoostPlan,
    ExpertMember,
    ExpertNetwork,
    IdealResult,
    boost_request,
    boost_reward,
    distance_response,
    ideal_distance,
    ideal_time,
    net_compete,
    time_response,
)
from .curves import (
    CurveFamily,
    CurveSpec,
    Point2D,
    Polyline,
    cycloid_center,
    cycloid_ode_residual,
    cycloid_point,
    cycloid_x_of_y,
    epicycloid_point,
    hypocycloid_arclength,
    hypocycloid_area,
    hypocycloid_point,
    sample_curve,
)
from .memorial import MemorialStats, MemorialStore, RaceRecord, expert_set, stats
from .neuron import (
    AMN,
    CoreKind,
    NeuronConfig,
    UserProfile,
    binary_response,
    build_neuron,
    confidence_score,
    neuron_traces,
    unwrapped_phase,
)
from .race import (
    Deadline,
    DeadlineKind,
    GroupResponse,
    NodeState,
    Prescription,
    RaceOutcome,
    RacePool,
    decision_loss,
    elapsed_and_distance,
    group_response,
    node_state_at_deadline,
    run_race,
)

__version__ = "0.1.0"
