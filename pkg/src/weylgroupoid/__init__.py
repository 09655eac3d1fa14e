"""Weyl groupoids of Cartan schemes in exact integer arithmetic."""

from .cartan import (CartanScheme, SchemeError, ValidationReport, Violation, restrict, simple_reflection_matrix,
                     validate_scheme)
from .complex import (CoxeterComplexData, GeometricFace, ParabolicCoset, arrangement, canonical_coset,
                      coset_intersection, coxeter_complex, geometric_faces, verify_isomorphism)
from .groupoid import HomSet, Morphism, ObjectMismatch, WeylGroupoid, enumerate_hom_to
from .order import NotComparable, WeakOrderPoset, build_poset, poset
from .roots import NotFinite, RootSystemData, check_axioms, generate_roots, is_indecomposable
from .schemefile import parse_scheme_file
from .simplicial import SimplicialComplex, order_complex


def load(source) -> tuple[CartanScheme, RootSystemData, WeylGroupoid]:
    """Scheme, roots and groupoid from a path or bundled name (finite roots required)."""
    scheme = CartanScheme.from_raw(parse_scheme_file(source))
    roots = generate_roots(scheme)
    return scheme, roots, WeylGroupoid(scheme, roots)


__all__ = [
    "CartanScheme", "SchemeError", "ValidationReport", "Violation", "restrict",
    "simple_reflection_matrix", "validate_scheme",
    "CoxeterComplexData", "GeometricFace", "ParabolicCoset", "arrangement", "canonical_coset",
    "coset_intersection", "coxeter_complex", "geometric_faces", "verify_isomorphism",
    "HomSet", "Morphism", "ObjectMismatch", "WeylGroupoid", "enumerate_hom_to",
    "NotComparable", "WeakOrderPoset", "build_poset", "poset",
    "NotFinite", "RootSystemData", "check_axioms", "generate_roots", "is_indecomposable",
    "parse_scheme_file", "SimplicialComplex", "order_complex", "load",
]
