"""Terminal regular b-groups built from triangle-group blocks.

Two one-dimensional constructions are provided. ``build_0_4`` amalgamates
two triangle groups along the parabolic z -> z + 2. ``build_1_1`` adds a
handle to a (inf, inf, nu) triangle group with an HNN conjugator.
``assemble`` iterates both along a pants decomposition.

Words multiply left to right as matrices, so the rightmost letter acts
first on points: the word ``X Y`` is the map z -> X(Y(z)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .jsonio import decode_complex, decode_moebius, encode_complex, encode_moebius
from .moebius import (
    INF, IDENTITY, Moebius, fixed_points, psl_distance, standardizer,
)
from .partition import PartitionGraph
from .triangle import (
    Signature, SignatureType, canonical_generators, nu_constants,
    signature_type, standard_generators,
)

__all__ = [
    "Word", "MarkedBGroup", "CoordinateBounds", "build_0_4",
    "coordinate_bounds_0_4", "build_1_1", "coordinate_bounds_1_1",
    "plumbing_param_0_4", "plumbing_param_1_1", "exclusion_witness_0_4",
    "recover_coordinate_0_4", "hnn_conjugator", "assemble",
]


@dataclass(frozen=True)
class Word:
    """A product of generator powers, e.g. ``Word.parse("C B^-1 C^-1 A^-1")``."""

    letters: tuple = ()

    def __post_init__(self):
        letters = tuple((str(n), int(e)) for n, e in self.letters)
        if any(e == 0 for _, e in letters):
            raise ValueError("word exponents must be nonzero")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def of(cls, *letters) -> "Word":
        return cls(tuple(letters))

    @classmethod
    def parse(cls, text: str) -> "Word":
        letters = []
        for token in text.split():
            name, _, exp = token.partition("^")
            letters.append((name, int(exp) if exp else 1))
        return cls(tuple(letters))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "Word":
        return Word(tuple((n, -e) for n, e in reversed(self.letters)))

    def reduced(self) -> "Word":
        """Free reduction: merge neighbours with the same name, drop zero powers."""
        out: list = []
        for name, e in self.letters:
            if out and out[-1][0] == name:
                e += out.pop()[1]
                if e == 0:
                    continue
            out.append((name, e))
        return Word(tuple(out))

    def names(self) -> set:
        return {n for n, _ in self.letters}

    def evaluate(self, lookup) -> Moebius:
        result = IDENTITY
        for name, e in self.letters:
            result = result @ (lookup[name] ** e)
        return result

    def __str__(self):
        return " ".join(n if e == 1 else f"{n}^{e}" for n, e in self.letters) or "1"

    def to_json(self) -> list:
        return [[n, e] for n, e in self.letters]

    @classmethod
    def from_json(cls, doc) -> "Word":
        return cls(tuple((n, e) for n, e in doc))


@dataclass(frozen=True)
class MarkedBGroup:
    """Generators, relations and coordinates of a marked b-group.

    ``auxiliary`` holds named elements that are not generators but may
    appear in words (for instance accidental parabolics defined by a
    relation). ``torsion`` pairs words with the finite order they must have.
    """

    signature: Signature
    generators: tuple
    relations: tuple = ()
    accidental_parabolics: tuple = ()
    coordinates: tuple = ()
    partition_label: str = ""
    torsion: tuple = ()
    auxiliary: tuple = ()
    warnings: tuple = ()

    def lookup(self) -> dict:
        table = dict(self.auxiliary)
        table.update(self.generators)
        return table

    def element(self, name: str) -> Moebius:
        try:
            return self.lookup()[name]
        except KeyError:
            raise KeyError(f"unknown group element {name!r}") from None

    def evaluate(self, word: Word) -> Moebius:
        table = self.lookup()
        missing = word.names() - set(table)
        if missing:
            raise KeyError(f"unresolved generator names: {sorted(missing)}")
        return word.evaluate(table)

    @property
    def generator_names(self) -> list:
        return [n for n, _ in self.generators]

    def generator_matrices(self) -> list:
        return [m for _, m in self.generators]

    def to_json(self) -> dict:
        return {
            "signature": self.signature.to_json(),
            "partition": self.partition_label,
            "generators": [{"name": n, "matrix": encode_moebius(m)} for n, m in self.generators],
            "auxiliary": [{"name": n, "matrix": encode_moebius(m)} for n, m in self.auxiliary],
            "relations": [w.to_json() for w in self.relations],
            "torsion": [{"word": w.to_json(), "order": k} for w, k in self.torsion],
            "accidental_parabolics": list(self.accidental_parabolics),
            "coordinates": [encode_complex(z) for z in self.coordinates],
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "MarkedBGroup":
        sig = doc["signature"]
        nu = tuple(math.inf if v is None else v for v in sig["nu"])
        return cls(
            signature=Signature(sig["p"], nu),
            generators=tuple((g["name"], decode_moebius(g["matrix"])) for g in doc["generators"]),
            relations=tuple(Word.from_json(w) for w in doc.get("relations", [])),
            accidental_parabolics=tuple(doc.get("accidental_parabolics", [])),
            coordinates=tuple(decode_complex(z) for z in doc.get("coordinates", [])),
            partition_label=doc.get("partition", ""),
            torsion=tuple((Word.from_json(t["word"]), int(t["order"]))
                          for t in doc.get("torsion", [])),
            auxiliary=tuple((g["name"], decode_moebius(g["matrix"]))
                            for g in doc.get("auxiliary", [])),
            warnings=tuple(doc.get("warnings", [])),
        )


@dataclass(frozen=True)
class CoordinateBounds:
    """Im(coordinate) > y1 is certified; Im(coordinate) > y2 is necessary."""

    y1: float
    y2: float

    def certified(self, z: complex) -> bool:
        return z.imag > self.y1

    def excluded(self, z: complex) -> bool:
        return z.imag <= self.y2


def _nu_label(v) -> str:
    return "inf" if v == math.inf else str(v)


def _hyperbolic_tail(a, b) -> bool:
    return signature_type(Signature(0, (math.inf, a, b))) is SignatureType.HYPERBOLIC


def _arrange_0_4(nu) -> tuple:
    """Validate (nu1..nu4) and move a {2, 2} pair to the second block."""
    nu = tuple(Signature(0, tuple(nu)).nu)
    if len(nu) != 4:
        raise ValueError("a (0,4) signature has four ramification values")
    first, second = nu[:2], nu[2:]
    swapped = False
    if first == (2, 2):
        if second == (2, 2):
            raise ValueError("(0,4;2,2,2,2) has no admissible block split")
        first, second, swapped = second, first, True
    if not _hyperbolic_tail(*first):
        raise ValueError(f"(0,3;inf,{_nu_label(first[0])},{_nu_label(first[1])}) is not hyperbolic")
    if second != (2, 2) and not _hyperbolic_tail(*second):
        raise ValueError(f"(0,3;inf,{_nu_label(second[0])},{_nu_label(second[1])}) is not admissible")
    return first + second, swapped


def coordinate_bounds_0_4(nu) -> CoordinateBounds:
    """Bounds for the amalgamation coordinate alpha.

    Hyperbolic second block: y1 = 1/(q1+q2) + 1/(q3+q4) and
    y2 = max(1/(q1+q2), 1/(q3+q4)). For a {2, 2} second block the
    certified half-plane is Im(alpha) > 1/(q1+q2) and the necessary one is
    Im(alpha) > 0.
    """
    (n1, n2, n3, n4), _ = _arrange_0_4(nu)
    q1, q2, q3, q4 = (nu_constants(v)[0] for v in (n1, n2, n3, n4))
    r1 = 1.0 / (q1 + q2)
    if (n3, n4) == (2, 2):
        return CoordinateBounds(r1, 0.0)
    r2 = 1.0 / (q3 + q4)
    return CoordinateBounds(r1 + r2, max(r1, r2))


def _require_upper(z: complex, what: str) -> complex:
    z = complex(z)
    if not z.imag > 0:
        raise ValueError(f"{what} must have positive imaginary part, got {z}")
    return z


def build_0_4(nu, alpha: complex) -> MarkedBGroup:
    """Amalgamate Gamma(inf,nu1,nu2; inf,0,1) and Gamma(inf,nu3,nu4; inf,alpha,alpha-1).

    The shared parabolic is A(z) = z + 2. Generators are A, B (first block)
    and A_inv, B_alpha_inv (second block; B_alpha for a {2, 2} block).
    """
    alpha = _require_upper(alpha, "alpha")
    (n1, n2, n3, n4), swapped = _arrange_0_4(nu)
    A, B = standard_generators((math.inf, n1, n2))
    A_inv, G = canonical_generators((math.inf, n3, n4), (INF, alpha, alpha - 1))
    cusp = (n3, n4) == (2, 2)
    second = "B_alpha" if cusp else "B_alpha_inv"
    torsion = []
    if n1 != math.inf:
        torsion.append((Word.of(("B", 1)), n1))
    if n2 != math.inf:
        torsion.append((Word.of(("A", 1), ("B", 1)), n2))
    if n3 != math.inf:
        torsion.append((Word.of((second, 1)), n3))
    if n4 != math.inf:
        torsion.append((Word.of(("A_inv", 1), (second, 1)), n4))
    warnings = []
    if swapped:
        warnings.append("the {2,2} ramification pair was moved to the second block")
    bounds = coordinate_bounds_0_4((n1, n2, n3, n4))
    if not bounds.certified(alpha):
        warnings.append(f"alpha={alpha}: Im(alpha) <= y1={bounds.y1:.6g}, "
                        "combination hypothesis not certified")
    if cusp:
        warnings.append("plumbing parameter for a {2,2} block is uncertified")
    sig = Signature(0, (n1, n2, n3, n4))
    return MarkedBGroup(
        signature=sig,
        generators=(("A", A), ("B", B), ("A_inv", A_inv), (second, G)),
        relations=(Word.of(("A", 1), ("A_inv", 1)),),
        accidental_parabolics=("A",),
        coordinates=(alpha,),
        partition_label="single",
        torsion=tuple(torsion),
        warnings=tuple(warnings),
    )


def exclusion_witness_0_4(nu, alpha: complex) -> tuple:
    """Point z = alpha - (q3 + i)/(q3 + q4) and its image under B_alpha_inv.

    Im of the image is Im(alpha) - 1/(q3 + q4), so for Im(alpha) below
    1/(q3 + q4) the second block moves a point of the upper half-plane
    below the real axis. Returns (z, image).
    """
    alpha = complex(alpha)
    (n1, n2, n3, n4), _ = _arrange_0_4(nu)
    if (n3, n4) == (2, 2):
        raise ValueError("the witness needs a hyperbolic second block")
    q3, q4 = nu_constants(n3)[0], nu_constants(n4)[0]
    c = q3 + q4
    _, G = canonical_generators((math.inf, n3, n4), (INF, alpha, alpha - 1))
    z = alpha - (q3 + 1j) / c
    return z, G(z)


def _balanced_center(m: Moebius, tol: float) -> complex:
    pts = [z for z in fixed_points(m, tol) if z is not INF]
    return sum(pts) / len(pts)


def recover_coordinate_0_4(group: MarkedBGroup, tol: float = 1e-9) -> complex:
    """Read alpha back from the matrices of a (possibly conjugated) build_0_4 group.

    The frame where A is z -> z + 2 is unique up to translation; alpha is
    the offset between the fixed-point centres of the two blocks' second
    generators in that frame.
    """
    A, B = group.element("A"), group.element("B")
    names = group.generator_names
    second = group.element("B_alpha" if "B_alpha" in names else "B_alpha_inv")
    W = standardizer(A, B, tol)
    Wi = W.inverse()
    return _balanced_center(W @ second @ Wi, tol) - _balanced_center(W @ B @ Wi, tol)


def plumbing_param_0_4(alpha: complex) -> complex:
    """t = exp(pi i alpha)."""
    alpha = _require_upper(alpha, "alpha")
    return cmath.exp(1j * math.pi * alpha)


def coordinate_bounds_1_1() -> CoordinateBounds:
    return CoordinateBounds(2.0, 0.0)


def hnn_conjugator(tau: complex, q: float, literal_conjugator: bool = False) -> Moebius:
    """Handle conjugator C with C B^-1 C^-1 = A for the (inf, inf, nu) block.

    The block is in the frame (INF, 0, 2): A(z) = z + 4 and B fixes 0 with
    lower-left entry (1+q)/2. ``literal_conjugator`` gives the matrix
    [[i tau, i sqrt(2/(1+q))], [i sqrt((1+q)/2), 0]], which conjugates
    B^-1 to a translation by 1 rather than 4.
    """
    tau = complex(tau)
    r = math.sqrt(2 / (1 + q))
    if literal_conjugator:
        return Moebius(1j * tau, 1j * r, 1j / r, 0)
    return Moebius(1j * tau, 2j * r, 0.5j / r, 0)


def _block_conjugator(tau: complex, q: float) -> Moebius:
    # same handle in the (INF, 0, 1) frame, where A(z) = z + 2
    r = math.sqrt(2 / (1 + q))
    return Moebius(1j * tau, 1j * r, 1j / r, 0)


def build_1_1(nu, tau: complex, literal_conjugator: bool = False) -> MarkedBGroup:
    """HNN extension of Gamma(inf, inf, nu; inf, 0, 2) by C."""
    tau = _require_upper(tau, "tau")
    (nu,) = Signature(1, (nu,)).nu
    q = nu_constants(nu)[0]
    A, B = canonical_generators((math.inf, math.inf, nu), (INF, 0j, 2 + 0j))
    C = hnn_conjugator(tau, q, literal_conjugator)
    warnings = []
    if not coordinate_bounds_1_1().certified(tau):
        warnings.append(f"tau={tau}: Im(tau) <= 2, combination hypothesis not certified")
    if literal_conjugator:
        warnings.append("literal conjugator: C B^-1 C^-1 is a translation by 1, not A")
    torsion = ((Word.of(("A", 1), ("B", 1)), nu),) if nu != math.inf else ()
    return MarkedBGroup(
        signature=Signature(1, (nu,)),
        generators=(("A", A), ("B", B), ("C", C)),
        relations=(Word.of(("C", 1), ("B", -1), ("C", -1), ("A", -1)),),
        accidental_parabolics=("A",),
        coordinates=(tau,),
        partition_label="single",
        torsion=torsion,
        warnings=tuple(warnings),
    )


def plumbing_param_1_1(tau: complex, nu) -> complex:
    """t = exp(2 pi i/(1+q)) exp(sqrt(2/(1+q)) pi i tau)."""
    tau = _require_upper(tau, "tau")
    q = nu_constants(Signature(1, (nu,)).nu[0])[0]
    return cmath.exp(2j * math.pi / (1 + q)) * cmath.exp(math.sqrt(2 / (1 + q)) * math.pi * 1j * tau)


# -- general assembly -------------------------------------------------------

@dataclass
class _Assembly:
    # Each pants keeps its elements in a local frame where they are a
    # canonical triangle-group pair of moderate size; global elements are
    # F^-1 (local) F. Frames compose, so nothing is re-standardized from
    # large global matrices.
    sig: Signature
    part: PartitionGraph
    local: dict = field(default_factory=dict)  # pants -> {slot: Moebius}
    frames: dict = field(default_factory=dict)  # pants -> Moebius
    elems: dict = field(default_factory=dict)  # (pants, slot) -> Moebius

    @property
    def placed(self) -> set:
        return set(self.frames)

    def nu_at(self, k: int, i: int):
        token = self.part.pants[k][i]
        if token[0] == "p":
            return self.sig.nu[int(token[1:])]
        return math.inf

    def place(self, k: int, first: int, x: Moebius, y: Moebius, frame: Moebius) -> None:
        loc = {first: x, (first + 1) % 3: y, (first + 2) % 3: (x @ y).inverse()}
        self.local[k] = loc
        self.frames[k] = frame
        fi = frame.inverse()
        for i, m in loc.items():
            self.elems[(k, i)] = fi @ m @ frame

    def frame(self, k: int, i: int) -> Moebius:
        """Global-to-standard map for slot i of pants k (slot i parabolic)."""
        loc = self.local[k]
        return standardizer(loc[i], loc[(i + 1) % 3]) @ self.frames[k]


def _dimension_one(sig: Signature, part: PartitionGraph, coords, literal_conjugator):
    if (sig.p, sig.n) == (1, 1):
        return build_1_1(sig.nu[0], coords[0], literal_conjugator)
    nu = []
    for pants in part.pants:
        j = next(i for i, t in enumerate(pants) if t[0] == "c")
        for i in (1, 2):
            nu.append(sig.nu[int(pants[(j + i) % 3][1:])])
    return build_0_4(tuple(nu), coords[0])


def _root_slot(asm: _Assembly):
    for k, pants in enumerate(asm.part.pants):
        for r in range(3):
            if pants[r][0] == "c" and _hyperbolic_tail(
                    asm.nu_at(k, (r + 1) % 3), asm.nu_at(k, (r + 2) % 3)):
                return k, r
    return None


def _handle_slots(curve) -> tuple:
    (k, i), (_, j) = curve.ends
    if j == (i + 1) % 3:
        return k, i
    if i == (j + 1) % 3:
        return k, j
    raise ValueError(f"handle curve {curve.label} must join two slots of one pants")


def assemble(sig: Signature, partition: PartitionGraph, coords,
             literal_conjugator: bool = False) -> MarkedBGroup:
    """Build a marked b-group for ``sig`` along ``partition``.

    Curves joining two pants are amalgamations; the coordinate of such a
    curve is the alpha of the (0,4) construction in the frame where the
    already-placed side is standard. Curves joining two consecutive slots
    of one pants are handles with coordinate tau. The root block is the
    first pants with a curve slot followed by two slots forming a hyperbolic
    (inf, nu, nu') triple; it sits in the standard frame (INF, 0, 1).

    Generators: for each handle curve ``A<label>`` (its parabolic, raised
    to the curve sign) and ``C<label>``; then ``P<k>`` for each marked point.
    Accidental parabolics of separating curves are auxiliary elements
    ``A<label>`` defined by a relation.
    """
    coords = tuple(complex(z) for z in coords)
    if signature_type(sig) is not SignatureType.HYPERBOLIC or sig.dimension < 1:
        raise ValueError(f"{sig} is not a hyperbolic signature with positive dimension")
    if len(coords) != sig.dimension:
        raise ValueError(f"{sig} needs {sig.dimension} coordinates, got {len(coords)}")
    for z in coords:
        _require_upper(z, "every coordinate")
    partition.validate(sig)
    if sig.dimension == 1:
        g = _dimension_one(sig, partition, coords, literal_conjugator)
        return MarkedBGroup(g.signature, g.generators, g.relations, g.accidental_parabolics,
                            g.coordinates, partition.label, g.torsion, g.auxiliary, g.warnings)

    asm = _Assembly(sig, partition)
    root = _root_slot(asm)
    if root is None:
        raise ValueError("no pants has a curve slot followed by a hyperbolic pair")
    k0, r0 = root
    n1, n2 = asm.nu_at(k0, (r0 + 1) % 3), asm.nu_at(k0, (r0 + 2) % 3)
    asm.place(k0, r0, *standard_generators((math.inf, n1, n2)), IDENTITY)

    index = {c.label: k for k, c in enumerate(partition.curves)}
    handles: dict = {}
    warnings = []
    pending = list(partition.curves)
    while pending:
        progress = False
        for curve in list(pending):
            z = coords[index[curve.label]]
            if curve.is_handle:
                k, i = _handle_slots(curve)
                if k not in asm.placed:
                    continue
                q = nu_constants(asm.nu_at(k, (i + 2) % 3))[0]
                V = asm.frame(k, i)
                C = V.inverse() @ _block_conjugator(z, q) @ V
                handles[curve.label] = (k, i, C)
                bounds = coordinate_bounds_1_1()
            else:
                (k, i), (m, j) = curve.ends
                if k not in asm.placed and m in asm.placed:
                    (k, i), (m, j) = (m, j), (k, i)
                if k not in asm.placed:
                    continue
                if m in asm.placed:
                    raise ValueError(f"curve {curve.label} closes a cycle between different pants")
                n3, n4 = asm.nu_at(m, (j + 1) % 3), asm.nu_at(m, (j + 2) % 3)
                if (n3, n4) != (2, 2) and not _hyperbolic_tail(n3, n4):
                    raise ValueError(f"pants {m} is not an admissible block")
                X_inv, G = canonical_generators((math.inf, n3, n4), (INF, z, z - 1))
                asm.place(m, j, X_inv, G, asm.frame(k, i))
                bounds = coordinate_bounds_0_4(
                    (asm.nu_at(k, (i + 1) % 3), asm.nu_at(k, (i + 2) % 3), n3, n4))
            if not bounds.certified(z):
                warnings.append(f"coordinate {curve.label}={z}: Im <= y1={bounds.y1:.6g}, "
                                "not certified")
            pending.remove(curve)
            progress = True
        if not progress:
            raise ValueError("partition has curves unreachable from the root pants")

    return _finish(asm, handles, coords, warnings)


def _finish(asm: _Assembly, handles: dict, coords, warnings) -> MarkedBGroup:
    part, sig = asm.part, asm.sig
    generators, words = [], {}
    for curve in part.curves:
        if curve.label not in handles:
            continue
        k, i, C = handles[curve.label]
        a_name, c_name = f"A{curve.label}", f"C{curve.label}"
        x = asm.elems[(k, i)]
        generators.append((a_name, x ** curve.sign))
        generators.append((c_name, C))
        xw = Word.of((a_name, curve.sign))
        words[(k, i)] = xw
        # C Y^-1 C^-1 = X, so Y = C^-1 X^-1 C
        words[(k, (i + 1) % 3)] = Word.of((c_name, -1)) * xw.inverse() * Word.of((c_name, 1))
    torsion = []
    for idx, (k, i) in sorted(part.points().items()):
        name = f"P{idx}"
        generators.append((name, asm.elems[(k, i)]))
        words[(k, i)] = Word.of((name, 1))
        if sig.nu[idx] != math.inf:
            torsion.append((Word.of((name, 1)), sig.nu[idx]))

    links = {}
    for curve in part.curves:
        if not curve.is_handle:
            a, b = curve.ends
            links[tuple(a)] = tuple(b)
            links[tuple(b)] = tuple(a)

    closed, surface, glued = set(), [], set()
    changed = True
    while changed:
        changed = False
        for slot, other in links.items():
            if slot in words and other not in words:
                words[other] = words[slot].inverse()
                glued.add(frozenset((slot, other)))
                changed = True
        for k in range(len(part.pants)):
            if k in closed:
                continue
            known = [i for i in range(3) if (k, i) in words]
            if len(known) == 2:
                missing = ({0, 1, 2} - set(known)).pop()
                w1 = words[(k, (missing + 1) % 3)]
                w2 = words[(k, (missing + 2) % 3)]
                words[(k, missing)] = (w1 * w2).inverse().reduced()
                closed.add(k)
                changed = True
            elif len(known) == 3:
                product = words[(k, 0)] * words[(k, 1)] * words[(k, 2)]
                surface.append(product.reduced())
                closed.add(k)
                changed = True
    for slot, other in links.items():
        pair = frozenset((slot, other))
        if pair not in glued and slot < other:
            # both sides were derived independently: they must be inverse
            surface.append((words[slot] * words[other]).reduced())

    auxiliary, relations, accidental = [], [], []
    for curve in part.curves:
        name = f"A{curve.label}"
        accidental.append(name)
        if curve.label in handles:
            continue
        k, i = curve.ends[0]
        auxiliary.append((name, asm.elems[(k, i)]))
        relations.append((Word.of((name, 1)) * words[(k, i)].inverse()).reduced())
    relations.extend(surface)
    return MarkedBGroup(
        signature=sig,
        generators=tuple(generators),
        relations=tuple(relations),
        accidental_parabolics=tuple(accidental),
        coordinates=tuple(coords),
        partition_label=part.label,
        torsion=tuple(torsion),
        auxiliary=tuple(auxiliary),
        warnings=tuple(warnings),
    )
