"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Any, Literal, Union

from pydantic import BaseModel, Field


class PolytopeModel(BaseModel):
    """Wire form of a polytope; half-integral inputs use string coordinates."""

    ambient_dim: int
    k: int
    points: list[list[Union[int, str]]]


class GeneratorSpecModel(BaseModel):
    family: Literal["hypercube", "hexagon_power", "octagon3", "random_hull", "fractional_matching"]
    parameters: dict[str, Any] = Field(default_factory=dict)
    seed: int = 0


class SkeletonResponse(BaseModel):
    vertex_count: int
    adjacency: list[list[int]]
    dot: str


class DiameterResponse(BaseModel):
    ambient_dim: int
    k: int
    rank: int
    vertex_count: int
    diameter: int
    bound: int
    ko_bound: int
    tight: bool
    slack: int


class PathRequest(BaseModel):
    polytope: PolytopeModel
    source: int
    target: int


class CertificateModel(BaseModel):
    d: int
    k: int
    bound: int
    length: int
    path: list[int]
    trace: list[str]


class PathResponse(BaseModel):
    certificate: CertificateModel
    valid: bool
    bfs_distance: int


class SuiteModel(BaseModel):
    seed: int = 0
    hypercube_dims: list[int] = [1, 2, 3, 4, 5, 6]
    hexagon_dims: list[int] = [1, 2, 3, 4, 5]
    include_octagon: bool = True
    matching_graphs: list[str] = ["path2", "triangle", "cycle5"]
    random_count: int = 60
    random_dims: list[int] = [2, 3]
    random_ks: list[int] = [2, 3, 4]
    random_budget: list[int] = [6, 40]
    product_pairs: int = 20
    draws_per_instance: int = 3
    max_pairs_per_instance: int = 2000


class VerifyRequest(BaseModel):
    suite: SuiteModel = Field(default_factory=SuiteModel)
    jobs: int = 1


class VerifyResponse(BaseModel):
    suite: dict[str, Any]
    rows: list[dict[str, Any]]
    summary: dict[str, Any]


class HealthResponse(BaseModel):
    status: str
    version: str
