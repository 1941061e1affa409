"""Exact PL actions on the line, ping-pong certificates, and left orders of free groups."""
from .classify import Classification, MarkedAction, classify, find_expansion_witness
from .exact import INF, fmt, q, rationals_by_height
from .orders import (
    ConjugatedOrder,
    DynOrder,
    OrderViolationWitness,
    ResilientWitness,
    agreement_radius,
    auxiliary_order,
    conjugate_order,
    construct_violation,
    find_resilient_pair,
    is_W_order_on_ball,
    order_distance,
)
from .pingpong import (
    CertificateError,
    IntervalSet,
    PingPongCertificate,
    from_interleaved_points,
    verify_certificate,
    word_image,
)
from .plhomeo import (
    PeriodicPLHomeo,
    PLHomeo,
    evaluate_word,
    evaluate_word_at,
    fixed_sets,
    forward_orbit_hull,
    homeo_from_json,
    translation_number,
)
from .witnesses import (
    IntertwinedPair,
    build_certificate,
    certificate_for,
    certified_free_pair,
    gen_intertwined_pair,
    no_law_witness,
)
from .words import (
    NotMixedSign,
    PureBPower,
    ReducedWord,
    WordError,
    decompose_for_construction,
    engel,
    enumerate_ball,
    law_to_two_letters,
    reduce,
    syllable_normal_form,
    word,
)

__version__ = "0.1.0"
