"""Finite presentations and subgroup presentations.

File formats (letter syntax from `words`):
  presentation:  line "gens: <d>" then lines "rel: <word>"
  subgroup:      lines "gen: <word>"
Comment lines start with '#'; blank lines are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SpecFileError
from .words import format_word, free_reduce, parse_word


@dataclass(frozen=True)
class Presentation:
    rank: int
    relators: tuple
    name: str | None = None

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        cleaned = []
        for rel in self.relators:
            w = free_reduce(rel)
            if not w:
                continue  # empty relators dropped
            for u in w:
                if abs(u) > self.rank:
                    raise ValueError(f"relator letter {u} outside rank {self.rank}")
            cleaned.append(w)
        object.__setattr__(self, "relators", tuple(cleaned))

    def __str__(self):
        rels = ", ".join(format_word(r) for r in self.relators) or " "
        gens = ",".join(chr(ord("a") + i) for i in range(self.rank))
        return f"<{gens} | {rels}>"


@dataclass(frozen=True)
class SubgroupPresentation:
    """Presentation of a subgroup on Schreier generators.

    schreier_generators are words in the ambient generators; relators
    are words over the Schreier generators themselves.
    """

    schreier_generators: tuple
    relators: tuple
    simplification_log: tuple = field(default=())

    @property
    def rank(self):
        return len(self.schreier_generators)

    def presentation(self, name=None):
        return Presentation(rank=self.rank, relators=self.relators, name=name)


def presentation_from_text(text, name=None):
    rank = None
    relators = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("gens:"):
            if rank is not None:
                raise SpecFileError("duplicate 'gens:' line", ln)
            try:
                rank = int(line[len("gens:"):].strip())
            except ValueError:
                raise SpecFileError("bad generator count", ln) from None
        elif line.startswith("rel:"):
            if rank is None:
                raise SpecFileError("'rel:' before 'gens:'", ln)
            relators.append(parse_word(line[len("rel:"):], rank=rank, line=ln))
        else:
            raise SpecFileError(f"unrecognized line {line!r}", ln)
    if rank is None:
        raise SpecFileError("missing 'gens:' line")
    return Presentation(rank=rank, relators=tuple(relators), name=name)


def presentation_to_text(p):
    lines = ["# format: presentation v1", f"gens: {p.rank}"]
    lines += [f"rel: {format_word(r)}" for r in p.relators]
    return "\n".join(lines) + "\n"


def subgroup_words_from_text(text, rank=None):
    words = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not line.startswith("gen:"):
            raise SpecFileError(f"unrecognized line {line!r}", ln)
        words.append(parse_word(line[len("gen:"):], rank=rank, line=ln))
    return tuple(words)


def subgroup_words_to_text(words):
    lines = ["# format: subgroup v1"]
    lines += [f"gen: {format_word(w)}" for w in words]
    return "\n".join(lines) + "\n"


def free_product_with_commutators(rank_a, rank_b):
    """Presentation of F_a x F_b: commutators of cross-factor generators.

    Generators 1..rank_a are the A factor, rank_a+1..rank_a+rank_b the
    B factor.
    """
    relators = []
    for i in range(1, rank_a + 1):
        for j in range(rank_a + 1, rank_a + rank_b + 1):
            relators.append((i, j, -i, -j))
    return Presentation(
        rank=rank_a + rank_b,
        relators=tuple(relators),
        name=f"F{rank_a}xF{rank_b}",
    )
