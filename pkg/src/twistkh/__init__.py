"""Twisted-coefficient Khovanov homology of virtual link diagrams."""

from .atoms import Atom, EmptyDiagram, atoms_equal, build_atom
from .bracket import jones, jones_hat, jones_result, kauffman_bracket_q, kauffman_x, skein_bracket_q
from .codes import Diagram, Pass, ParseError, canonical_form, mirror, parse, virtualize
from .homology import HomologyTable, homology, homology_over_field, thickness
from .khovanov import AnticommutativityViolation, BigradedComplex, Ring, build_complex
from .laurent import LaurentPolynomial
from .linalg import smith_normal_form
from .moves import MoveNotApplicable, apply_r1, apply_r2, apply_r3, remove_r1, remove_r2
from .states import StateSpaceTooLarge, cube_edge, resolve

__all__ = [
    "AnticommutativityViolation", "Atom", "BigradedComplex", "Diagram", "EmptyDiagram", "HomologyTable",
    "LaurentPolynomial", "MoveNotApplicable", "ParseError", "Pass", "Ring", "StateSpaceTooLarge",
    "apply_r1", "apply_r2", "apply_r3", "atoms_equal", "build_atom", "build_complex", "canonical_form",
    "cube_edge", "homology", "homology_over_field", "jones", "jones_hat", "jones_result",
    "kauffman_bracket_q", "kauffman_x", "mirror", "parse", "remove_r1", "remove_r2", "resolve",
    "skein_bracket_q", "smith_normal_form", "thickness", "virtualize",
]
