from .polynomial import (
    Polynomial, NEG_INF_DEGREE, conj_reflect, parse_complex, parse_polynomial
)
from .roots import find_roots, roots, reduce_coprime, reduce_coprime_with_warnings
from .splitting import RootSplit, half_plane_split, split_roots

__all__ = [
    'Polynomial', 'NEG_INF_DEGREE', 'conj_reflect', 'parse_complex', 'parse_polynomial',
    'find_roots', 'roots', 'reduce_coprime', 'reduce_coprime_with_warnings',
    'RootSplit', 'half_plane_split', 'split_roots'
]
