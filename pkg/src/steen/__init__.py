"""Exact workbench for modules over the mod-2 Steenrod algebra and its A(n)."""

from __future__ import annotations

from steen.catalogue import MODULE_NAMES, get_module
from steen.milnor import Element, an, antipode, full_a, milnor_basis, sq, sq_word
from steen.module import (
    FiniteModule,
    cyclic_quotient,
    double,
    dualize,
    find_isomorphism,
    shift,
    tensor,
)
from steen.obstruction import obstruction_report
from steen.resolution import ext_chart, minimal_resolution
from steen.unstable import bso3, bsu3, truncate_quotient, wu_action

__all__ = [
    "Element",
    "FiniteModule",
    "MODULE_NAMES",
    "an",
    "antipode",
    "bso3",
    "bsu3",
    "cyclic_quotient",
    "double",
    "dualize",
    "ext_chart",
    "find_isomorphism",
    "full_a",
    "get_module",
    "milnor_basis",
    "minimal_resolution",
    "obstruction_report",
    "shift",
    "sq",
    "sq_word",
    "tensor",
    "truncate_quotient",
    "wu_action",
]
