"""Legal construction moves: enumeration, deduplication and goal-first ordering."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .geometry import Primitive, circle_from, line_through
from .scene import Scene

LINE = "line"
CIRCLE = "circle"
_KIND_RANK = {LINE: 0, CIRCLE: 1}


@dataclass(frozen=True)
class Move:
    """One tool application: a line through two points or a circle from center through a point."""

    kind: str
    first: str
    second: str

    def __post_init__(self) -> None:
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown move kind {self.kind!r}")
        if self.first == self.second:
            raise ValueError(f"move endpoints must differ, got {self.first!r} twice")

    @property
    def sort_key(self) -> tuple[int, str, str]:
        return (_KIND_RANK[self.kind], self.first, self.second)

    def __str__(self) -> str:
        return f"{self.kind} {self.first} {self.second}"


def line_move(a: str, b: str) -> Move:
    """Unordered line move, normalized so first < second."""
    if b < a:
        a, b = b, a
    return Move(LINE, a, b)


def circle_move(center: str, through: str) -> Move:
    return Move(CIRCLE, center, through)


def primitive_of(scene: Scene, move: Move) -> Primitive:
    """The primitive a move would construct in ``scene``; KeyError on unknown labels."""
    p = scene.point_map[move.first]
    q = scene.point_map[move.second]
    if move.kind == LINE:
        return line_through(p, q, scene.tol)
    return circle_from(p, q, scene.tol)


def enumerate_moves(scene: Scene) -> list[Move]:
    """Every legal next move, minus already-present primitives, in deterministic order."""
    labels = sorted(scene.point_map)
    moves: list[Move] = []
    eps = scene.tol.eps
    for a, b in combinations(labels, 2):
        if scene.point_map[a].distance(scene.point_map[b]) <= eps:
            continue  # impossible after registry dedup, guarded anyway
        move = line_move(a, b)
        if scene.find_primitive(primitive_of(scene, move)) is None:
            moves.append(move)
    for center, through in permutations(labels, 2):
        if scene.point_map[center].distance(scene.point_map[through]) <= eps:
            continue
        move = circle_move(center, through)
        if scene.find_primitive(primitive_of(scene, move)) is None:
            moves.append(move)
    moves.sort(key=lambda m: m.sort_key)
    return moves


def order_moves(moves: list[Move], scene: Scene, goal: Scene) -> list[Move]:
    """Stable partition: moves whose primitive key-matches a goal primitive come first."""
    hits: list[Move] = []
    rest: list[Move] = []
    for move in moves:
        if goal.find_primitive(primitive_of(scene, move)) is not None:
            hits.append(move)
        else:
            rest.append(move)
    return hits + rest
