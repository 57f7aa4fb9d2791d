"""Construction state: labeled point registry, deduplicated primitive set,
automatic intersection discovery on insertion, and goal matching.

Scenes are immutable; mutating operations return a new scene.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field, replace
from functools import cached_property

from .geometry import (
    DEFAULT_TOLERANCE,
    Point,
    Primitive,
    Tolerance,
    adjacent_keys,
    canonical_key,
    intersect,
)


class SceneError(ValueError):
    pass


class DuplicatePrimitive(SceneError):
    pass


class DuplicatePoint(SceneError):
    pass


class DuplicateSceneLabel(SceneError):
    pass


def _check_label(label: str) -> str:
    if not label or any(ch.isspace() for ch in label):
        raise SceneError(f"invalid label {label!r}")
    return label


@dataclass(frozen=True)
class Scene:
    """Registry of labeled points and primitives with canonical deduplication."""

    tol: Tolerance = DEFAULT_TOLERANCE
    points: tuple[tuple[str, Point], ...] = ()
    primitives: tuple[tuple[str, Primitive], ...] = ()
    given: frozenset[str] = frozenset()
    point_seq: int = 1
    prim_seq: int = 1

    # -- derived indexes ---------------------------------------------------

    @cached_property
    def point_map(self) -> dict[str, Point]:
        return dict(self.points)

    @cached_property
    def primitive_map(self) -> dict[str, Primitive]:
        return dict(self.primitives)

    @cached_property
    def _point_grid(self) -> dict[tuple[int, int], list[tuple[str, Point]]]:
        grid: dict[tuple[int, int], list[tuple[str, Point]]] = {}
        g = self.tol.eps
        for label, p in self.points:
            cell = (math.floor(p.x / g + 0.5), math.floor(p.y / g + 0.5))
            grid.setdefault(cell, []).append((label, p))
        return grid

    @cached_property
    def _key_index(self) -> dict[tuple, str]:
        return {canonical_key(prim, self.tol): label for label, prim in self.primitives}

    # -- lookups -----------------------------------------------------------

    def find_point(self, p: Point) -> str | None:
        """Label of the registered point within epsilon of ``p``, if any."""
        g = self.tol.eps
        cx = math.floor(p.x / g + 0.5)
        cy = math.floor(p.y / g + 0.5)
        best: str | None = None
        best_d = math.inf
        for ox in (0, -1, 1):
            for oy in (0, -1, 1):
                for label, q in self._point_grid.get((cx + ox, cy + oy), ()):
                    d = p.distance(q)
                    if d <= g and d < best_d:
                        best, best_d = label, d
        return best

    def find_primitive(self, prim: Primitive) -> str | None:
        """Label of the key-equal primitive, probing adjacent quantization buckets."""
        for key in adjacent_keys(canonical_key(prim, self.tol)):
            label = self._key_index.get(key)
            if label is not None:
                return label
        return None

    # -- construction ------------------------------------------------------

    def with_point(self, label: str, p: Point) -> "Scene":
        """Register a given point under ``label``."""
        _check_label(label)
        if label in self.point_map or label in self.primitive_map:
            raise DuplicateSceneLabel(f"label {label!r} already bound")
        hit = self.find_point(p)
        if hit is not None:
            raise DuplicatePoint(f"point {p} coincides with registered point {hit!r}")
        return replace(
            self,
            points=self.points + ((label, p),),
            given=self.given | {label},
        )

    def add_primitive(self, prim: Primitive, label: str | None = None, *, discover: bool = True) -> "Scene":
        """Insert a primitive plus every new intersection point it creates.

        New points are deduplicated against the registry and labeled
        P1, P2, ... in discovery order.
        """
        existing = self.find_primitive(prim)
        if existing is not None:
            raise DuplicatePrimitive(f"primitive already registered as {existing!r}")
        used = set(self.point_map) | set(self.primitive_map)
        prim_seq = self.prim_seq
        if label is None:
            while f"k{prim_seq}" in used:
                prim_seq += 1
            label = f"k{prim_seq}"
            prim_seq += 1
        else:
            _check_label(label)
            if label in used:
                raise DuplicateSceneLabel(f"label {label!r} already bound")
        used.add(label)

        scene = replace(self, primitives=self.primitives + ((label, prim),), prim_seq=prim_seq)
        if not discover:
            return scene

        new_points: list[tuple[str, Point]] = []
        point_seq = scene.point_seq
        for _, other in self.primitives:
            for pt in intersect(prim, other, self.tol):
                if scene.find_point(pt) is not None:
                    continue
                if any(pt.distance(q) <= self.tol.eps for _, q in new_points):
                    continue
                while f"P{point_seq}" in used:
                    point_seq += 1
                birth = f"P{point_seq}"
                point_seq += 1
                used.add(birth)
                new_points.append((birth, pt))
        if not new_points:
            return replace(scene, point_seq=point_seq)
        return replace(scene, points=scene.points + tuple(new_points), point_seq=point_seq)

    def rename_points(self, mapping: dict[str, str]) -> "Scene":
        """Relabel registered points; targets must be unused."""
        for src, dst in mapping.items():
            if src not in self.point_map:
                raise SceneError(f"unknown point {src!r}")
            _check_label(dst)
        taken = (set(self.point_map) - set(mapping)) | set(self.primitive_map)
        for dst in mapping.values():
            if dst in taken:
                raise DuplicateSceneLabel(f"label {dst!r} already bound")
            taken.add(dst)
        points = tuple((mapping.get(lbl, lbl), p) for lbl, p in self.points)
        given = frozenset(mapping.get(lbl, lbl) for lbl in self.given)
        return replace(self, points=points, given=given)

    # -- identity ----------------------------------------------------------

    @cached_property
    def signature(self) -> str:
        """Order-insensitive content hash over primitive canonical keys."""
        keys = sorted(canonical_key(prim, self.tol) for _, prim in self.primitives)
        return hashlib.blake2b(repr(keys).encode("ascii"), digest_size=16).hexdigest()

    def satisfies(self, goal: "Scene") -> bool:
        return goal_satisfied(self, goal)


def goal_satisfied(scene: Scene, goal: Scene) -> bool:
    """Containment check: every goal primitive and point is present within tolerance."""
    for _, prim in goal.primitives:
        if scene.find_primitive(prim) is None:
            return False
    for _, p in goal.points:
        if scene.find_point(p) is None:
            return False
    return True


def scene_signature(scene: Scene) -> str:
    return scene.signature


@dataclass(frozen=True)
class Problem:
    """An initial scene (black channel), a goal scene (blue channel) and a depth limit."""

    initial: Scene
    goal: Scene
    max_depth: int

    def __post_init__(self) -> None:
        if self.initial.tol != self.goal.tol:
            raise ValueError("initial and goal scenes must share the same tolerance")
        if self.max_depth < 0:
            raise ValueError(f"max_depth must be >= 0, got {self.max_depth}")
