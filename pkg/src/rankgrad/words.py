"""Free-group words as tuples of signed generator indices.

A word is a tuple of nonzero ints: +i is the i-th generator (1-based),
-i its inverse.  The file syntax maps lowercase letters a..z to
generators 1..26 in order and uppercase letters to their inverses, with
whitespace ignored ("abAB" is a commutator).
"""

from .errors import SpecFileError


def free_reduce(letters):
    """Freely reduce a letter sequence; same group element, no x x^-1."""
    out = []
    for u in letters:
        if u == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -u:
            out.pop()
        else:
            out.append(u)
    return tuple(out)


def invert(word):
    return tuple(-u for u in reversed(word))


def concat(*words):
    out = []
    for w in words:
        for u in w:
            if out and out[-1] == -u:
                out.pop()
            else:
                out.append(u)
    return tuple(out)


def cyclic_reduce(word):
    """Strip matching first/last inverse pairs; a conjugate of the input."""
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def _letter_key(u):
    # positive letters sort before their inverses: a < A < b < B
    return (abs(u), 0 if u > 0 else 1)


def cyclic_normal_form(word):
    """Canonical representative among all rotations of w and w^-1.

    Two relators with the same normal form have conjugate (or inverse)
    normal closures, so one of them is redundant.
    """
    w = cyclic_reduce(word)
    if not w:
        return w
    best = None
    best_key = None
    for v in (w, invert(w)):
        for i in range(len(v)):
            rot = v[i:] + v[:i]
            key = tuple(_letter_key(u) for u in rot)
            if best_key is None or key < best_key:
                best, best_key = rot, key
    return best


def parse_word(text, rank=None, line=None):
    """Parse letter syntax into a freely reduced word."""
    letters = []
    for ch in text:
        if ch.isspace():
            continue
        if "a" <= ch <= "z":
            letters.append(ord(ch) - ord("a") + 1)
        elif "A" <= ch <= "Z":
            letters.append(-(ord(ch) - ord("A") + 1))
        else:
            raise SpecFileError(f"bad character {ch!r} in word {text!r}", line)
    if rank is not None:
        for u in letters:
            if abs(u) > rank:
                raise SpecFileError(
                    f"letter {format_word((u,))} outside rank {rank}", line
                )
    return free_reduce(letters)


def format_word(word):
    """Inverse of parse_word; empty word renders as ''. """
    out = []
    for u in word:
        if abs(u) > 26:
            raise ValueError("letter syntax only covers 26 generators")
        if u > 0:
            out.append(chr(ord("a") + u - 1))
        else:
            out.append(chr(ord("A") - u - 1))
    return "".join(out)
