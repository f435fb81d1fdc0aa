"""Exact arithmetic for generalized Schreier families, repeated-averages
summability methods, strong Cantor-Bendixson window indices and
convex-unconditionality experiments."""

from .errors import (CapExceeded, OrdinalParseError, SchreierError,
                     ValidationError)
from .ordinals import (OMEGA, ONE, ZERO, Ordinal, add, classify, format_ordinal,
                       fund_seq, is_limit, mul_nat, omega_pow, parse_ordinal,
                       shift_threshold, successor)
from .lazysets import EVENS, NATURALS, LazySet
from .families import (FamilyWindow, FVariant, admissible_subsets, can_extend,
                       can_extend_k, enumerate_window, finset, image_family,
                       is_maximal, member, pairing, restrict, schreier_norm,
                       strong_rank)
from .averages import (DEFAULT_SUPPORT_CAP, HullDecomposition, PropertyReport,
                       RaVector, check_properties, delta_lower, delta_witness,
                       growth_probe, hull_decompose, ra_vector)
from .index import (SpreadingFamily, WindowIndexReport, embed_certificate,
                    f_delta_build, find_embedding, is_large, scb_derivative,
                    window_index)
from .models import (AppliedVector, SchreierModel, SequenceModel,
                     SignedSchreierModel, SupModel, WeightedModel,
                     apply_method, bs_probe, cesaro_means, reduction_check,
                     spreading_model_check, summability_trend)
from .unconditional import (CuQuery, cu_floor, cu_search, free_set_check,
                            suppression_check)

__all__ = [name for name in dir() if not name.startswith("_")]
