"""Arithmetic side: power sequences, searches, y-progressions, polynomial analogues."""

from .polyseq import (
    AP_FORM,
    CONSTANT_PROPORTIONAL,
    UNRESOLVED,
    NotConstantSecondDiff,
    PolySeq,
    ap_family,
    polyseq_classify,
    proportional_family,
)
from .sequences import (
    DEGENERATE,
    NONTRIVIAL,
    NOT_CONSTANT,
    SHORT,
    TRIVIAL,
    NoFit,
    QuadFit,
    SeqRecord,
    allison_family,
    classify,
    fit_quadratic,
    is_constant,
    miain_bound,
    point_to_sequence,
    search_sequences,
    second_diffs,
    sequence_point_bridge,
    trivial_witness,
)
from .yap import (
    EquivWitness,
    NotEquivalent,
    YapRecord,
    canonical_form,
    yap_dedup,
    yap_equivalent,
    yap_search,
    yap_verify,
)

__all__ = [
    "AP_FORM", "CONSTANT_PROPORTIONAL", "DEGENERATE", "EquivWitness", "NONTRIVIAL",
    "NOT_CONSTANT", "NoFit", "NotConstantSecondDiff", "NotEquivalent", "PolySeq",
    "QuadFit", "SHORT", "SeqRecord", "TRIVIAL", "UNRESOLVED", "YapRecord",
    "allison_family", "ap_family", "canonical_form", "classify", "fit_quadratic",
    "is_constant", "miain_bound", "point_to_sequence", "polyseq_classify",
    "proportional_family", "search_sequences", "second_diffs",
    "sequence_point_bridge", "trivial_witness", "yap_dedup", "yap_equivalent",
    "yap_search", "yap_verify",
]
