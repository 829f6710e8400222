"""Vertex labels and pure label arithmetic.

A vertex label has three parts: the subnet digit n in {1,2,3}, a binary
string recording the growth history (empty exactly for the three hubs),
and a positive index locating the vertex among all vertices that share
the same subnet and bit string.  Textual form: ``"n"`` for a hub,
``"n<bits>.<index>"`` otherwise, e.g. ``"2011.5"``.

Everything in this module is arithmetic on (m, t, label); no adjacency
structure is touched.  The companion / children / father operations
together reconstruct the full neighbor set of any vertex, which the test
suite checks against explicitly built graphs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

from .errors import LabelDomainError, LabelFormatError

_LABEL_RE = re.compile(r"^([123])(0[01]*)\.([1-9][0-9]*)$")
_HUB_RE = re.compile(r"^[123]$")


@dataclass(frozen=True, order=True)
class Label:
    """Identity of one vertex: subnet digit, growth bits, index within its bit class."""

    subnet: int
    bits: str = ""
    index: int | None = field(default=None)

    def __post_init__(self) -> None:
        if self.subnet not in (1, 2, 3):
            raise LabelFormatError(f"subnet must be 1, 2 or 3, got {self.subnet}")
        if self.bits == "":
            if self.index is not None:
                raise LabelFormatError("hub labels carry no index")
        else:
            if self.bits[0] != "0":
                raise LabelFormatError(
                    f"first bit must be 0 (initial vertices have no fathers): {self.bits!r}"
                )
            if any(c not in "01" for c in self.bits):
                raise LabelFormatError(f"bits must be over {{0,1}}: {self.bits!r}")
            if self.index is None or self.index < 1:
                raise LabelFormatError("non-hub labels need a positive index")

    @property
    def is_hub(self) -> bool:
        return self.bits == ""

    @property
    def birth(self) -> int:
        """Iteration at which the vertex joined the network (bit-string length)."""
        return len(self.bits)

    @property
    def text(self) -> str:
        return format_label(self)

    def __str__(self) -> str:
        return format_label(self)


def hub(subnet: int) -> Label:
    return Label(subnet)


def l_max(m: int, bits: str) -> int:
    """Number of vertices sharing one subnet and the bit string ``bits``.

    Equals (2m)^(j-s) * (m+1)^s for a length-j string with s ones: every
    growth step multiplies the class either by the 2m sons a lone vertex
    spawns (0-steps) or by the m+1 triangles an aging father accumulates
    (1-steps).
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if not bits:
        raise LabelFormatError("hubs have no index space (empty bit string)")
    if bits[0] != "0" or any(c not in "01" for c in bits):
        raise LabelFormatError(f"invalid bit string {bits!r}")
    j = len(bits)
    s = bits.count("1")
    return (2 * m) ** (j - s) * (m + 1) ** s


def format_label(label: Label) -> str:
    if label.is_hub:
        return str(label.subnet)
    return f"{label.subnet}{label.bits}.{label.index}"


def parse_label(text: str, m: int) -> Label:
    """Parse ``text`` into a Label, enforcing the index bound for parameter m."""
    if _HUB_RE.match(text):
        return Label(int(text))
    match = _LABEL_RE.match(text)
    if match is None:
        if re.match(r"^[123]1", text):
            raise LabelFormatError(f"{text!r}: first bit must be 0")
        raise LabelFormatError(f"{text!r}: expected 'n' or 'n<bits>.<index>' with n in 1..3")
    subnet, bits, index = int(match.group(1)), match.group(2), int(match.group(3))
    bound = l_max(m, bits)
    if index > bound:
        raise LabelFormatError(f"{text!r}: index {index} exceeds l_max={bound} for m={m}")
    return Label(subnet, bits, index)


def validate_in_graph(m: int, t: int, label: Label) -> None:
    """Check the label denotes a vertex of K_{m,t}."""
    if label.birth > t:
        raise LabelDomainError(f"{label} born at step {label.birth} > t={t}")
    if not label.is_hub and label.index > l_max(m, label.bits):
        raise LabelFormatError(
            f"{label}: index {label.index} exceeds l_max={l_max(m, label.bits)}"
        )


def companion(label: Label) -> Label:
    """The other son of the same group: same bits, index flipped within its odd/even pair."""
    if label.is_hub:
        raise LabelDomainError(f"hub {label} has no same-group companion")
    l = label.index
    return Label(label.subnet, label.bits, l + 1 if l % 2 == 1 else l - 1)


def father(m: int, label: Label) -> Label:
    """Label of the unique higher-degree neighbor.

    The rightmost 0 in the bit string sits at position j (1-based); the
    father was born at step j-1 and its child block at the vertex's birth
    step has width 2m(m+1)^(i-j), so the father's index is the ceiling of
    the vertex index over that width.  When j = 1 the father is the hub.
    """
    if label.is_hub:
        raise LabelDomainError(f"hub {label} has no father")
    bits = label.bits
    j = bits.rfind("0") + 1
    i = len(bits)
    width = 2 * m * (m + 1) ** (i - j)
    if j == 1:
        return Label(label.subnet)
    return Label(label.subnet, bits[: j - 1], -(-label.index // width))


def child_block(m: int, label: Label, step: int) -> tuple[str, int, int]:
    """Bit string and (first, last) index of the children ``label`` gains at ``step``.

    Children arriving at step j carry bits(v) + '0' + (j-birth-1) ones and
    occupy the index block ((l_v-1)*D, l_v*D] with D = 2m(m+1)^(j-birth-1);
    hubs own the whole range of their bit class.
    """
    i = label.birth
    if step <= i:
        raise ValueError(f"step {step} not after birth {i}")
    width = 2 * m * (m + 1) ** (step - i - 1)
    bits = label.bits + "0" + "1" * (step - i - 1)
    base = 0 if label.is_hub else (label.index - 1) * width
    return bits, base + 1, base + width


def children(m: int, t: int, label: Label) -> set[Label]:
    """All lower-degree neighbors of the vertex in K_{m,t}."""
    validate_in_graph(m, t, label)
    out: set[Label] = set()
    for step in range(label.birth + 1, t + 1):
        bits, first, last = child_block(m, label, step)
        for l in range(first, last + 1):
            out.add(Label(label.subnet, bits, l))
    return out


def degree_of(m: int, t: int, label: Label) -> int:
    """Degree in K_{m,t}: 2(m+1)^(t - birth)."""
    validate_in_graph(m, t, label)
    return 2 * (m + 1) ** (t - label.birth)


@dataclass(frozen=True)
class NeighborPartition:
    """Neighbor labels split by degree relative to the vertex."""

    equal: frozenset[Label]
    lower: frozenset[Label]
    higher: frozenset[Label]

    def as_set(self) -> set[Label]:
        return set(self.equal) | set(self.lower) | set(self.higher)

    def __len__(self) -> int:
        return len(self.equal) + len(self.lower) + len(self.higher)


def neighbor_partition(m: int, t: int, label: Label) -> NeighborPartition:
    """Full neighbor set of the vertex, from label arithmetic alone.

    Non-hub: equal = {companion}, lower = children, higher = {father}.
    Hubs have the two other hubs as their equal-degree neighbors and no
    higher-degree neighbor.
    """
    validate_in_graph(m, t, label)
    lower = frozenset(children(m, t, label))
    if label.is_hub:
        equal = frozenset(Label(n) for n in (1, 2, 3) if n != label.subnet)
        higher: frozenset[Label] = frozenset()
    else:
        equal = frozenset((companion(label),))
        higher = frozenset((father(m, label),))
    return NeighborPartition(equal=equal, lower=lower, higher=higher)


def _bit_strings(length: int) -> Iterator[str]:
    # all valid strings of one length: leading 0, rest free
    for k in range(1 << (length - 1)):
        yield "0" + format(k, f"0{length - 1}b") if length > 1 else "0"


def enumerate_labels(m: int, t: int) -> set[Label]:
    """The complete label set of K_{m,t} (hubs plus every per-step class)."""
    if m < 1 or t < 0:
        raise ValueError(f"need m >= 1 and t >= 0, got m={m}, t={t}")
    out: set[Label] = {Label(1), Label(2), Label(3)}
    for j in range(1, t + 1):
        for bits in _bit_strings(j):
            bound = l_max(m, bits)
            for n in (1, 2, 3):
                for l in range(1, bound + 1):
                    out.add(Label(n, bits, l))
    return out
