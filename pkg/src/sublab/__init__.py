"""Pattern languages, recognizability and complexity bounds for 2D substitutions."""

from .constructions import (
    BlockEncoding,
    apply_encoding,
    block_encoding,
    decode,
    robinson_projection,
    sparse_blowup,
    sparse_complexity_check,
)
from .errors import *  # noqa: F401,F403
from .language import (
    PatternLanguage,
    SeedSet,
    complexity,
    complexity_table,
    fragment_complexity,
    language,
    naive_language,
    saturate_seeds,
)
from .patterns import Alphabet, Pattern, Vec2, canonicalize, occurrences, restrict, subpatterns, translate
from .recognizability import (
    AperiodicityCertificate,
    BoundReport,
    DesubReport,
    bound_karimoutot,
    bound_turbolemme,
    desub_phases,
    lemma11_radius,
    solomyak_radius,
    turbolemme_injection,
    unique_desub_depth,
    verify_bounds,
)
from .substitution import (
    DeterminingPosition,
    PrimitivityReport,
    Substitution,
    apply,
    compose,
    composed_determining_position,
    determining_positions,
    is_invertible,
    is_primitive,
    power,
)
from .wang1d import CycleWitness, DominoSet, tiles_line

__version__ = "0.1.0"
