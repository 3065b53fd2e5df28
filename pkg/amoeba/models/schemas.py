"""
Modelos de datos para grafos, permutaciones y certificados de amebas
"""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

Pair = Tuple[int, int]


class Graph(BaseModel):
    """Grafo simple no dirigido sobre los índices 1..n"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0, description="Número de vértices")
    edges: Tuple[Pair, ...] = Field(default=(), description="Aristas canónicas (i < j), en orden lexicográfico")

    @model_validator(mode="before")
    @classmethod
    def _canonical_edges(cls, data):
        if not isinstance(data, dict):
            return data
        n = data.get("n")
        raw = data.get("edges", ())
        seen = set()
        for pair in raw:
            i, j = (int(x) for x in pair)
            if i == j:
                raise ValueError(f"lazo en el vértice {i}")
            if isinstance(n, int) and not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"arista {i} {j} fuera de [1, {n}]")
            key = (i, j) if i < j else (j, i)
            if key in seen:
                raise ValueError(f"arista repetida {key[0]} {key[1]}")
            seen.add(key)
        return {**data, "edges": tuple(sorted(seen))}

    @property
    def size(self) -> int:
        return len(self.edges)

    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def adjacency(self) -> List[set]:
        """Listas de adyacencia con índices base 0 (uso interno de los motores)"""
        adj = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i - 1].add(j - 1)
            adj[j - 1].add(i - 1)
        return adj

    def degrees(self) -> List[int]:
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i - 1] += 1
            deg[j - 1] += 1
        return deg

    @classmethod
    def trusted(cls, n: int, edges) -> "Graph":
        """Construye sin validar; solo para aristas ya canónicas producidas por los motores"""
        return cls.model_construct(n=n, edges=tuple(sorted(tuple(e) for e in edges)))


class RootedGraph(BaseModel):
    """Grafo con un vértice raíz distinguido"""

    model_config = ConfigDict(frozen=True)

    graph: Graph = Field(..., description="Grafo subyacente")
    root: int = Field(..., description="Índice de la raíz en [n]")

    @model_validator(mode="after")
    def _root_in_range(self):
        if not 1 <= self.root <= self.graph.n:
            raise ValueError(f"raíz {self.root} fuera de [1, {self.graph.n}]")
        return self


class Permutation(BaseModel):
    """Permutación de [n] en forma de imágenes (base 1)"""

    model_config = ConfigDict(frozen=True)

    images: Tuple[int, ...] = Field(..., description="images[i-1] = σ(i)")

    @field_validator("images")
    @classmethod
    def _bijection(cls, images):
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} no es una biyección de [{len(images)}]")
        return tuple(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def zero_based(self) -> Tuple[int, ...]:
        return tuple(x - 1 for x in self.images)

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, start=1))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Permutation.model_construct(images=tuple(inv))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Ciclos no triviales, cada uno empezando por su menor elemento"""
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cycle = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                seen.add(j)
                cycle.append(j)
                j = self(j)
            out.append(tuple(cycle))
        return out

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls.model_construct(images=tuple(range(1, n + 1)))

    @classmethod
    def from_zero_based(cls, images) -> "Permutation":
        return cls.model_construct(images=tuple(x + 1 for x in images))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        images = list(range(1, n + 1))
        # producto c_1 ∘ c_2 ∘ ... : el último ciclo actúa primero
        for cycle in reversed([list(c) for c in cycles]):
            if len(set(cycle)) != len(cycle):
                raise ValueError(f"ciclo con puntos repetidos: {cycle}")
            for point in cycle:
                if not 1 <= point <= n:
                    raise ValueError(f"punto {point} fuera de [1, {n}]")
            step = dict(zip(cycle, cycle[1:] + cycle[:1]))
            images = [step.get(x, x) for x in images]
        return cls(images=tuple(images))

    def __str__(self) -> str:
        return "(" + " ".join(map(str, self.images)) + ")"


class GeneratorWord(BaseModel):
    """Palabra en los generadores originales: [(índice base 0, ±1), ...]"""

    model_config = ConfigDict(frozen=True)

    letters: Tuple[Tuple[int, int], ...] = Field(default=(), description="Letras (generador, exponente)")

    @field_validator("letters")
    @classmethod
    def _exponents(cls, letters):
        for index, exponent in letters:
            if exponent not in (1, -1) or index < 0:
                raise ValueError(f"letra inválida ({index}, {exponent})")
        return tuple(letters)

    def __len__(self) -> int:
        return len(self.letters)


class StabilizerLevel(BaseModel):
    """Nivel de una cadena de estabilizadores"""

    point: int = Field(..., description="Punto base b_i")
    orbit: List[int] = Field(..., description="Órbita de b_i bajo el i-ésimo estabilizador")
    strong_generators: List[Permutation] = Field(..., description="Generadores fuertes del nivel")


class ReplacementKind(str, Enum):
    NEUTRAL = "neutral"
    SWAP = "swap"


class EdgeReplacement(BaseModel):
    """Reemplazo de aristas rs → kl, o el reemplazo neutro ∅ → ∅"""

    model_config = ConfigDict(frozen=True)

    kind: ReplacementKind = Field(..., description="Neutro o intercambio")
    removed: Optional[Pair] = Field(None, description="Arista retirada rs")
    added: Optional[Pair] = Field(None, description="No-arista añadida kl")

    @model_validator(mode="after")
    def _shape(self):
        if self.kind is ReplacementKind.NEUTRAL:
            if self.removed is not None or self.added is not None:
                raise ValueError("el reemplazo neutro no mueve aristas")
            return self
        if self.removed is None or self.added is None:
            raise ValueError("un intercambio necesita arista retirada y añadida")
        for pair in (self.removed, self.added):
            if pair[0] >= pair[1]:
                raise ValueError(f"par no canónico {pair}")
        if self.removed == self.added:
            raise ValueError("rs y kl deben ser distintos")
        return self

    @classmethod
    def neutral(cls) -> "EdgeReplacement":
        return cls(kind=ReplacementKind.NEUTRAL)

    @classmethod
    def swap(cls, removed, added) -> "EdgeReplacement":
        return cls(kind=ReplacementKind.SWAP, removed=tuple(sorted(removed)), added=tuple(sorted(added)))

    @property
    def is_neutral(self) -> bool:
        return self.kind is ReplacementKind.NEUTRAL

    def __str__(self) -> str:
        if self.is_neutral:
            return "-"
        return f"{self.removed[0]} {self.removed[1]} -> {self.added[0]} {self.added[1]}"


class GeneratorAtlas(BaseModel):
    """Un testigo por reemplazo factible más generadores de A_G"""

    graph: Graph = Field(..., description="Grafo de referencia")
    replacements: List[EdgeReplacement] = Field(..., description="R_G, el neutro al final")
    witnesses: List[Permutation] = Field(..., description="σ₀ ∈ S_G(rs→kl), alineado con los intercambios")
    aut_gens: List[Permutation] = Field(..., description="Generadores de A_G")

    def swaps(self) -> List[EdgeReplacement]:
        return [r for r in self.replacements if not r.is_neutral]

    def generators(self) -> List[Permutation]:
        """Testigos primero, luego automorfismos"""
        return list(self.witnesses) + list(self.aut_gens)

    def label(self, index: int) -> EdgeReplacement:
        """Reemplazo asociado al generador de índice dado"""
        swaps = self.swaps()
        if index < len(swaps):
            return swaps[index]
        return EdgeReplacement.neutral()


class AutomorphismResult(BaseModel):
    """Grupo A_G como lista completa o como conjunto generador"""

    elements: List[Permutation] = Field(default_factory=list, description="Todos los automorfismos (si complete)")
    generators: List[Permutation] = Field(..., description="Generadores de A_G")
    order: int = Field(..., description="|A_G|")
    complete: bool = Field(..., description="True si elements contiene el grupo entero")

    @field_serializer("order")
    def _order_as_str(self, value: int) -> str:
        return str(value)


class GlobalMethod(str, Enum):
    ORBIT_PENDANT = "orbit-pendant"
    ISOLATED_EXTENSION = "isolated-extension"
    DEFINITION = "definition"


class AmoebaCategory(str, Enum):
    BOTH = "local-and-global"
    LOCAL_ONLY = "local-only"
    GLOBAL_ONLY = "global-only"
    NEITHER = "neither"

    @classmethod
    def of(cls, is_local: bool, is_global: bool) -> "AmoebaCategory":
        if is_local and is_global:
            return cls.BOTH
        if is_local:
            return cls.LOCAL_ONLY
        if is_global:
            return cls.GLOBAL_ONLY
        return cls.NEITHER


class RootedVerdict(BaseModel):
    """Veredictos de un grafo con raíz"""

    root: int = Field(..., description="Índice de la raíz")
    root_similar: List[int] = Field(..., description="Vértices similares a la raíz")
    stem_transitive: bool = Field(..., description="Estabilizador de la raíz transitivo en el resto")
    double_rooted: bool = Field(..., description="Ameba global de doble raíz")
    double_rooted_local: bool = Field(..., description="Ameba local de doble raíz")


class ClassificationReport(BaseModel):
    """Reporte de clasificación con certificados"""

    n: int = Field(..., description="Orden del grafo")
    edges: List[Pair] = Field(..., description="Aristas del grafo")
    aut_order: int = Field(..., description="|A_G|")
    sg_order: int = Field(..., description="|S_G|")
    is_local: bool = Field(..., description="S_G = S_n")
    is_global: bool = Field(..., description="Ameba global")
    global_method: GlobalMethod = Field(..., description="Criterio que produjo el veredicto global")
    orbits: List[List[int]] = Field(..., description="Órbitas de S_G, ordenadas por su menor elemento")
    degree_one_indices: List[int] = Field(..., description="Índices de vértices de grado 1")
    degenerate: bool = Field(..., description="Grafo sin aristas")
    replacement_count: int = Field(..., description="|R_G*|, sin contar el neutro")
    min_degree: int = Field(..., description="δ(G)")
    is_transitive: bool = Field(..., description="S_G transitivo en [n]")
    category: AmoebaCategory = Field(..., description="Combinación local/global")
    generators: List[Permutation] = Field(..., description="Generadores de S_G (testigos y automorfismos)")
    cross_checked: Optional[bool] = Field(None, description="Acuerdo con el criterio de G ∪ K_1")
    oracle_agrees: Optional[bool] = Field(None, description="Acuerdo con el cierre ingenuo de 𝓔_G (n pequeño)")
    rooted: Optional[RootedVerdict] = Field(None, description="Veredictos con raíz, si se pidió")

    @field_serializer("aut_order", "sg_order")
    def _order_as_str(self, value: int) -> str:
        return str(value)

    @field_serializer("generators")
    def _perms_as_text(self, value: List[Permutation]) -> List[str]:
        return [str(p) for p in value]

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json")


class ConsistencyRecord(BaseModel):
    """Acuerdo entre las caracterizaciones equivalentes de ameba global"""

    n: int
    criterion_ii: bool = Field(..., description="Cada órbita contiene un vértice de grado 1")
    criterion_iii: bool = Field(..., description="G ∪ K_1 es ameba local")
    is_local: bool
    min_degree: int
    corollary_claims: List[str] = Field(default_factory=list, description="Implicaciones por grado mínimo verificadas")
    consistent: bool


class CompositionLayout(BaseModel):
    """Disposición de índices de G ∗_I H"""

    base_n: int = Field(..., description="Orden de G")
    I: Tuple[int, ...] = Field(..., description="Índices de G donde se pega H")
    m: int = Field(..., description="Orden de H")
    h_root: int = Field(..., description="Raíz de H")
    blocks: Tuple[Tuple[int, ...], ...] = Field(..., description="Bloques J_{i_ℓ}")
    block_maps: Tuple[Tuple[int, ...], ...] = Field(..., description="Vértice v de H ↦ índice en [N], por bloque")

    @property
    def N(self) -> int:
        return self.base_n + len(self.I) * (self.m - 1)

    def block_of(self, i: int) -> int:
        """Posición ℓ (base 0) del bloque pegado en i"""
        return self.I.index(i)


class AmbientStep(BaseModel):
    """Paso de una cadena sobre los vértices de K_n"""

    removed: Optional[Pair] = Field(None, description="Arista ambiente retirada")
    added: Optional[Pair] = Field(None, description="Arista ambiente añadida")
    resulting_edges: Tuple[Pair, ...] = Field(..., description="Aristas tras el paso")


class MorphChain(BaseModel):
    """Cadena de reemplazos factibles de G a G_σ"""

    start: Graph = Field(..., description="Grafo inicial (incluye los vértices aislados de holgura)")
    steps: List[AmbientStep] = Field(default_factory=list, description="Pasos no neutros")
    target_perm: Permutation = Field(..., description="Permutación objetivo σ")
    trace: List[str] = Field(default_factory=list, description="Letras neutras omitidas (depuración)")

    def to_file_dict(self) -> dict:
        return {
            "start": {"n": self.start.n, "edges": [list(e) for e in self.start.edges]},
            "target": list(self.target_perm.images),
            "steps": [
                {
                    "remove": list(step.removed) if step.removed else None,
                    "add": list(step.added) if step.added else None,
                }
                for step in self.steps
            ],
        }


class ChainVerdict(BaseModel):
    """Resultado de validar una cadena"""

    valid: bool
    failed_step: Optional[int] = Field(None, description="Primer paso que viola un invariante")
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.valid


class ReachabilitySummary(BaseModel):
    """Resumen del BFS por copias embebidas"""

    reachable: int = Field(..., description="Copias alcanzables desde G")
    total: int = Field(..., description="n!/|A_G| copias en total")
    expected_reachable: int = Field(..., description="|S_G|/|A_G|, copias que el grupo predice alcanzables")
    all_reachable: bool

    @field_serializer("reachable", "total", "expected_reachable")
    def _count_as_str(self, value: int) -> str:
        return str(value)


class CensusLine(BaseModel):
    """Resultado de una línea del censo"""

    line: int
    report: Optional[Dict] = None
    error: Optional[str] = None
