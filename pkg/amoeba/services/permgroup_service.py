"""
Motor de grupos de permutaciones: órbitas, cadenas de estabilizadores
(Schreier–Sims determinista), orden, pertenencia y factorización en palabras
"""

import logging
import math
import re
from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from pydantic import ValidationError

from ..exceptions import PermutationError, StateBudgetExceededError, VertexIndexError
from ..models import GeneratorWord, Permutation, StabilizerLevel

logger = logging.getLogger(__name__)

# Permutaciones internas: tuplas base 0
_Perm = Tuple[int, ...]
_Word = Tuple[Tuple[int, int], ...]


def _mul(a: _Perm, b: _Perm) -> _Perm:
    """(a ∘ b)(x) = a(b(x))"""
    return tuple(a[x] for x in b)


def _inv(a: _Perm) -> _Perm:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def _is_id(a: _Perm) -> bool:
    return all(i == x for i, x in enumerate(a))


def _inv_word(word: _Word) -> _Word:
    return tuple((letter, -exp) for letter, exp in reversed(word))


def _free_reduce(word: Iterable[Tuple[int, int]]) -> _Word:
    out: List[Tuple[int, int]] = []
    for letter, exp in word:
        if out and out[-1][0] == letter and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((letter, exp))
    return tuple(out)


def _common_degree(gens: Sequence[Permutation], degree: Optional[int]) -> int:
    degrees = {g.degree for g in gens}
    if degree is not None:
        degrees.add(degree)
    if len(degrees) > 1:
        raise PermutationError(f"grados incompatibles: {sorted(degrees)}")
    if not degrees:
        raise PermutationError("sin generadores hay que indicar el grado")
    return degrees.pop()


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """σ(i) = a(b(i)); b actúa primero"""
    if a.degree != b.degree:
        raise PermutationError(f"grados distintos: {a.degree} y {b.degree}")
    return Permutation.model_construct(images=tuple(a.images[x - 1] for x in b.images))


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def evaluate_word(word: GeneratorWord, gens: Sequence[Permutation], degree: Optional[int] = None) -> Permutation:
    """Evalúa g_a^ε1 ∘ g_b^ε2 ∘ ... sobre la lista de generadores"""
    n = _common_degree(gens, degree)
    zero = [g.zero_based() for g in gens]
    result = tuple(range(n))
    for index, exp in word.letters:
        if index >= len(zero):
            raise PermutationError(f"generador {index} inexistente")
        g = zero[index] if exp == 1 else _inv(zero[index])
        result = _mul(result, g)
    return Permutation.from_zero_based(result)


def orbit(x: int, gens: Sequence[Permutation], degree: Optional[int] = None) -> Set[int]:
    """Órbita de x bajo ⟨gens⟩"""
    if gens or degree is not None:
        n = _common_degree(gens, degree)
        if not 1 <= x <= n:
            raise VertexIndexError(f"punto {x} fuera de [1, {n}]")
    seen = {x}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for g in gens:
            z = g(y)
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return seen


def orbits(gens: Sequence[Permutation], degree: int) -> List[List[int]]:
    """Partición de [n] en órbitas, ordenadas por su menor elemento"""
    _common_degree(gens, degree)
    parent = list(range(degree + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in gens:
        for i, x in enumerate(g.images, start=1):
            ra, rb = find(i), find(x)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    blocks: Dict[int, List[int]] = {}
    for i in range(1, degree + 1):
        blocks.setdefault(find(i), []).append(i)
    return sorted(blocks.values(), key=lambda block: block[0])


def setwise_stabilizer_check(p: Permutation, points: Iterable[int]) -> bool:
    """True si p lleva el conjunto sobre sí mismo"""
    subset = set(points)
    return {p(i) for i in subset} == subset


def closure(gens: Sequence[Permutation], degree: int, limit: Optional[int] = None) -> FrozenSet[Permutation]:
    """Cierre ingenuo de ⟨gens⟩ por composición (oráculo de fuerza bruta)"""
    n = _common_degree(gens, degree)
    zero = [g.zero_based() for g in gens]
    start = tuple(range(n))
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for g in zero:
            q = _mul(g, p)
            if q not in seen:
                seen.add(q)
                if limit is not None and len(seen) > limit:
                    raise StateBudgetExceededError(f"el cierre supera {limit} elementos")
                queue.append(q)
    return frozenset(Permutation.from_zero_based(p) for p in seen)


_BALL_LIMIT = 4096


class StabilizerChain:
    """Base y conjunto generador fuerte de ⟨generators⟩.

    Cada nivel guarda una transversal: punto de la órbita ↦ (u, u⁻¹) con u(b_i) = punto.
    Las palabras en los generadores originales viven aparte, en una tabla de palabras
    cortas que se construye la primera vez que se pide una factorización.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation]):
        self.degree = degree
        self.generators: List[Permutation] = list(generators)
        self._identity: _Perm = tuple(range(degree))
        self._perms: List[_Perm] = [g.zero_based() for g in self.generators]
        self._base: List[int] = []
        self._strong: List[List[int]] = []
        self._transversals: List[Dict[int, Tuple[_Perm, _Perm]]] = []
        self._words: Optional["_WordTable"] = None

    # -- construcción ---------------------------------------------------

    def _append_base_point(self, point: int):
        self._base.append(point)
        self._strong.append([])
        self._transversals.append({point: (self._identity, self._identity)})

    def _rebuild(self, level: int):
        beta = self._base[level]
        table = {beta: (self._identity, self._identity)}
        queue = [beta]
        for x in queue:
            u, _ = table[x]
            for s in self._strong[level]:
                perm = self._perms[s]
                y = perm[x]
                if y not in table:
                    nu = _mul(perm, u)
                    table[y] = (nu, _inv(nu))
                    queue.append(y)
        self._transversals[level] = table

    def _strip(self, p: _Perm, level: int) -> Tuple[_Perm, int]:
        for l in range(level, len(self._base)):
            entry = self._transversals[l].get(p[self._base[l]])
            if entry is None:
                return p, l
            p = _mul(entry[1], p)
        return p, len(self._base)

    def _add_residue(self, h: _Perm, first: int, last: int):
        if last == len(self._base):
            moved = next(i for i, x in enumerate(h) if i != x)
            self._append_base_point(moved)
        self._perms.append(h)
        index = len(self._perms) - 1
        for l in range(first, last + 1):
            self._strong[l].append(index)
            self._rebuild(l)

    def _complete(self, level: int):
        i = level
        while i >= 0:
            restart = None
            for b, (u_b, _) in list(self._transversals[i].items()):
                for s in list(self._strong[i]):
                    perm = self._perms[s]
                    u_sb, u_sb_inv = self._transversals[i][perm[b]]
                    product = _mul(perm, u_b)
                    if product == u_sb:
                        continue
                    h, j = self._strip(_mul(u_sb_inv, product), i + 1)
                    if j < len(self._base) or not _is_id(h):
                        self._add_residue(h, i + 1, j)
                        restart = j
                        break
                if restart is not None:
                    break
            i = i - 1 if restart is None else restart

    def _extend(self, index: int):
        perm = self._perms[index]
        if _is_id(perm):
            return
        h, j = self._strip(perm, 0)
        if j == len(self._base) and _is_id(h):
            return
        self._add_residue(h, 0, j)
        self._complete(j)

    # -- consultas -------------------------------------------------------

    @property
    def base(self) -> List[int]:
        return [b + 1 for b in self._base]

    @property
    def levels(self) -> List[StabilizerLevel]:
        return [
            StabilizerLevel(
                point=self._base[l] + 1,
                orbit=sorted(x + 1 for x in self._transversals[l]),
                strong_generators=self.strong_generators(l),
            )
            for l in range(len(self._base))
        ]

    def strong_generators(self, level: int) -> List[Permutation]:
        if level >= len(self._base):
            return []
        return [Permutation.from_zero_based(self._perms[s]) for s in self._strong[level]]

    def order(self) -> int:
        return math.prod(len(t) for t in self._transversals)

    def word_table(self) -> "_WordTable":
        if self._words is None:
            self._words = _WordTable(self)
        return self._words

    def transversal_word(self, level: int, point: int) -> GeneratorWord:
        _, w = self.word_table().entry(level, point - 1)
        return GeneratorWord(letters=w)

    def transversal_element(self, level: int, point: int) -> Permutation:
        u, _ = self.word_table().entry(level, point - 1)
        return Permutation.from_zero_based(u)

    def contains(self, p: Permutation, with_word: bool = True) -> Tuple[bool, Optional[GeneratorWord]]:
        """Criba p por la cadena; si pertenece, devuelve una palabra que lo evalúa"""
        if p.degree != self.degree:
            raise PermutationError(f"grado {p.degree} distinto de {self.degree}")
        h, j = self._strip(p.zero_based(), 0)
        if j < len(self._base) or not _is_id(h):
            return False, None
        if not with_word:
            return True, None
        return True, GeneratorWord(letters=self.word_table().factor(p.zero_based()))


class _WordTable:
    """Transversales sobre la base de la cadena con la palabra más corta encontrada.

    Primero se criban los elementos de una bola BFS en los generadores, en orden de
    longitud; luego, si faltan puntos, productos s ∘ u con s generador del nivel
    (original que fija el prefijo o entrada de un nivel igual o más profundo) hasta
    llenar cada órbita básica. Un punto fijo de ese proceso ya es una BSGS, así que
    siempre termina lleno.
    """

    def __init__(self, chain: StabilizerChain, ball_limit: int = _BALL_LIMIT):
        self.base = list(chain._base)
        self.identity = chain._identity
        self.tables: List[Dict[int, Tuple[_Perm, _Perm, _Word]]] = [
            {b: (self.identity, self.identity, ())} for b in self.base
        ]
        self.missing = sum(len(t) for t in chain._transversals) - len(self.base)
        self.version = 0
        self.letters: List[Tuple[_Perm, Tuple[int, int]]] = []
        for j, g in enumerate(chain.generators):
            perm = g.zero_based()
            if _is_id(perm):
                continue
            self.letters.append((perm, (j, 1)))
            inv = _inv(perm)
            if inv != perm:
                self.letters.append((inv, (j, -1)))

        self._ball(ball_limit)
        if self.missing:
            self._close()
        self._improve()
        logger.debug(
            "Tabla de palabras: base=%d, longitud máxima=%d",
            len(self.base),
            max((len(w) for t in self.tables for _, _, w in t.values()), default=0),
        )

    def _sift(self, g: _Perm, w: _Word, level: int):
        for l in range(level, len(self.base)):
            table = self.tables[l]
            x = g[self.base[l]]
            entry = table.get(x)
            if entry is None:
                table[x] = (g, _inv(g), w)
                self.missing -= 1
                self.version += 1
                return
            if len(w) < len(entry[2]):
                # la entrada más corta se queda; se sigue cribando la desplazada
                table[x] = (g, _inv(g), w)
                self.version += 1
                g, _, w = entry
                entry = table[x]
            _, u_inv, wu = entry
            g = _mul(u_inv, g)
            if _is_id(g):
                return
            w = _free_reduce(_inv_word(wu) + w)

    def _ball(self, limit: int):
        seen = {self.identity}
        queue = deque([(self.identity, ())])
        while queue and len(seen) < limit:
            p, w = queue.popleft()
            for perm, letter in self.letters:
                q = _mul(p, perm)
                if q in seen:
                    continue
                seen.add(q)
                word = w + (letter,)
                self._sift(q, word, 0)
                queue.append((q, word))

    def _level_generators(self, level: int) -> List[Tuple[_Perm, _Word]]:
        prefix = self.base[:level]
        gens = [(perm, (letter,)) for perm, letter in self.letters if all(perm[b] == b for b in prefix)]
        for table in self.tables[level:]:
            gens.extend((u, w) for u, _, w in table.values() if w)
        return sorted(gens, key=lambda item: len(item[1]))

    def _close(self):
        while self.missing:
            before = self.version
            for level in range(len(self.base)):
                gens = self._level_generators(level)
                entries = sorted(self.tables[level].values(), key=lambda item: len(item[2]))
                for u, _, wu in entries:
                    for s, ws in gens:
                        self._sift(_mul(s, u), _free_reduce(ws + wu), level)
                        if not self.missing:
                            return
            if self.version == before:
                raise PermutationError("tabla de palabras incompleta en un punto fijo")

    def _improve(self):
        for level, table in enumerate(self.tables):
            entries = [(u, w) for u, _, w in table.values() if w]
            for a, wa in entries:
                for b, wb in entries:
                    self._sift(_mul(a, b), _free_reduce(wa + wb), level)

    def entry(self, level: int, point: int) -> Tuple[_Perm, _Word]:
        u, _, w = self.tables[level][point]
        return u, w

    def factor(self, p: _Perm) -> _Word:
        # p = u_0 ∘ u_1 ∘ ... ∘ u_{k-1}
        parts: List[Tuple[int, int]] = []
        for l, point in enumerate(self.base):
            _, u_inv, w = self.tables[l][p[point]]
            p = _mul(u_inv, p)
            parts.extend(w)
        return _free_reduce(parts)


def build_chain(
    gens: Sequence[Permutation],
    base_hint: Optional[Sequence[int]] = None,
    degree: Optional[int] = None,
) -> StabilizerChain:
    """Schreier–Sims determinista; la base empieza por base_hint si se da"""
    n = _common_degree(gens, degree)
    chain = StabilizerChain(n, gens)
    for point in base_hint or ():
        if not 1 <= point <= n:
            raise VertexIndexError(f"punto base {point} fuera de [1, {n}]")
        if point - 1 not in chain._base:
            chain._append_base_point(point - 1)
    for letter in range(len(gens)):
        chain._extend(letter)
    logger.debug("Cadena de grado %d: base=%s orden=%d", n, chain.base, chain.order())
    return chain


def group_order(chain: StabilizerChain) -> int:
    return chain.order()


def contains(chain: StabilizerChain, p: Permutation) -> Tuple[bool, Optional[GeneratorWord]]:
    return chain.contains(p)


def point_stabilizer_gens(chain: StabilizerChain, k: int) -> List[Permutation]:
    """Generadores fuertes del estabilizador de k (reconstruye si la base no empieza en k)"""
    if not chain.base or chain.base[0] != k:
        chain = build_chain(chain.generators, base_hint=[k], degree=chain.degree)
    return chain.strong_generators(1)


_ONE_LINE = re.compile(r"\s*\[([^\[\]]*)\]\s*")
_CYCLES = re.compile(r"\s*(\([^()]*\)\s*)+")


def _ints(text: str) -> List[int]:
    tokens = [t for t in re.split(r"[\s,]+", text.strip()) if t]
    try:
        return [int(t) for t in tokens]
    except ValueError as e:
        raise PermutationError(f"entrada no numérica en {text!r}") from e


def parse_permutation(text: str, n: Optional[int] = None) -> Permutation:
    """Lee una permutación en forma de imágenes o en notación de ciclos"""
    try:
        match = _ONE_LINE.fullmatch(text)
        if match:
            images = _ints(match.group(1))
        elif "(" not in text:
            images = _ints(text)
        elif _CYCLES.fullmatch(text):
            groups = [_ints(g) for g in re.findall(r"\(([^()]*)\)", text)]
            if len(groups) == 1 and n is not None and sorted(groups[0]) == list(range(1, n + 1)):
                images = groups[0]
            else:
                size = n if n is not None else max((max(g) for g in groups if g), default=0)
                return Permutation.from_cycles(size, [g for g in groups if g])
        else:
            raise PermutationError(f"permutación ilegible: {text!r}")
        if not images:
            raise PermutationError("permutación vacía")
        if n is not None and len(images) != n:
            raise PermutationError(f"se esperaban {n} imágenes, hay {len(images)}")
        return Permutation(images=tuple(images))
    except (ValidationError, ValueError) as e:
        if isinstance(e, PermutationError):
            raise
        raise PermutationError(str(e)) from e
