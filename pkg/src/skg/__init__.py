"""Signal knowledge graphs: declare how entities, actions, signals,
sensors and buildings relate, compile the scene into a discrete Bayesian
network, and infer the causes behind classified sensor observations."""

from .canon import serialize
from .compiler import (
    ActionSite,
    Candidate,
    candidate_emissions_for_sensor,
    compile_graph,
    enumerate_action_sites,
    noisy_or,
    sensor_cpt,
)
from .errors import (
    CompileError,
    Diagnostic,
    InferenceError,
    LexError,
    ParseError,
    ProfileError,
    SkgError,
    ValidationError,
)
from .geometry import Point2D, WallSegment, line_of_sight, wall_crossings
from .inference import (
    Evidence,
    Factor,
    Posterior,
    apply_virtual_evidence,
    enumerate_posterior,
    joint_probability,
    map_assignment,
    ve_posterior,
    virtual_child_id,
)
from .lexer import Token, tokenize
from .model import (
    Action,
    ClassifierModel,
    DetectionCurve,
    Emission,
    Entity,
    KnowledgeGraph,
    Override,
    Place,
    Profile,
    Sensor,
    SignalClass,
    SignalKindSpec,
)
from .network import BayesianNetwork, NodeSpec
from .parser import Document, parse
from .propagation import (
    detection_distribution,
    false_alarm_distribution,
    received_strength,
    resolve_classifier_class,
)
from .report import PosteriorReport, WindowReport, build_report, evidence_windows, explain
from .sampling import (
    CalibrationRow,
    Dataset,
    GroundTruthRecord,
    ObservationRecord,
    SplitMix64,
    ancestral_sample,
    calibration_report,
    simulate_dataset,
)
from .validate import apply_profile, validate

__version__ = "0.1.0"


def load_graph(source: str) -> KnowledgeGraph:
    """Tokenize, parse and validate `.skg` source in one step."""
    return validate(parse(tokenize(source)))
