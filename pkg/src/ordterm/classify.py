"""Fast-growing complexity class labels for hierarchy-shaped bounds.

A bound of the form g_{w^a} with g in the class indexed by gamma lands in
the class indexed by gamma + a (ordinal addition).  The gamma assigned to
each control family is a coarse bookkeeping choice, kept in an editable
table and flagged as an interpretation in output: every member of the
closed control family is affine, and gamma = 1 makes lexicographic N^d
ranking with linear control come out at index d + 1.

Milestone names: index 3 is Tower, w is Ack, w^w is HAck.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexTooSmall
from .hierarchy import ControlFunction
from .ordinal import OMEGA, OrdinalTerm, cnf_add, from_int, omega_power, to_text

ordinal_add = cnf_add

MILESTONES: dict[OrdinalTerm, str] = {
    from_int(3): "Tower",
    OMEGA: "Ack",
    omega_power(OMEGA): "HAck",
}

# gamma assigned to a control family: interpretation, not a paper-given table
CONTROL_GAMMA: dict[str, OrdinalTerm] = {
    "succ": from_int(1),
    "add": from_int(1),
    "mul": from_int(1),
    "affine": from_int(1),
}

GAMMA_NOTE = ("control-class indices are an interpretation: the closed control "
              "family is affine throughout and is assigned gamma = 1")


@dataclass(frozen=True)
class ComplexityClass:
    """F_index with an optional milestone name; defined for index >= 3."""

    index: OrdinalTerm
    milestone: str | None = None

    def __str__(self) -> str:
        label = format_index(self.index)
        return f"{label} = {self.milestone}" if self.milestone else label


def format_index(index: OrdinalTerm) -> str:
    """``F_3``, ``F_w``, ``F_{w+1}``: braces whenever the ordinal is not one token."""
    text = to_text(index)
    return f"F_{text}" if text in ("w",) or text.isdigit() else f"F_{{{text}}}"


def control_gamma(g: ControlFunction) -> OrdinalTerm:
    """The class index assumed for a control function, from the table."""
    return CONTROL_GAMMA[g.family.split(":")[0]]


def classify_bound(gamma: OrdinalTerm, alpha_exponent: OrdinalTerm) -> ComplexityClass:
    """The class for a g_{w^alpha} bound when g sits below class gamma.

    The index is gamma + alpha in ordinal arithmetic, so a finite gamma is
    absorbed by any infinite alpha.  Indices below 3 are outside the
    defined range and raise IndexTooSmall (carrying the computed index).
    """
    if gamma < from_int(1):
        raise ValueError("gamma must be at least 1")
    index = ordinal_add(gamma, alpha_exponent)
    if index < from_int(3):
        raise IndexTooSmall(
            f"index {to_text(index)} is below the defined range (>= 3)", index=index)
    return ComplexityClass(index, MILESTONES.get(index))


def round_up_exponent(alpha: OrdinalTerm) -> OrdinalTerm:
    """Least a' with w^a' >= alpha: complexities g_alpha round up to g_{w^a'}.

    For alpha already a single w-power the exponent itself; otherwise the
    successor of the leading exponent (an upper bound only).
    """
    if alpha.is_zero:
        return OrdinalTerm()
    head_expo, head_coeff = alpha.head
    if head_coeff == 1 and len(alpha.summands) == 1:
        return head_expo
    return cnf_add(head_expo, from_int(1))
