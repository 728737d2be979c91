from enum import Enum
from typing import Any, Dict

from pydantic import BaseModel, Field


class ConstructionName(str, Enum):
    LINE_AP = "line_ap"
    EVENLY_SPREAD = "evenly_spread"
    F_MINUS1 = "f_minus1"
    F_MINUS2 = "f_minus2"
    F_PLUS1 = "f_plus1"
    F_PLUS2 = "f_plus2"
    TREE_BALL = "tree_ball"
    LATTICE_BALL = "lattice_ball"
    BIPARTITE_SPLIT = "bipartite_split"
    RADIAL_STAR = "radial_star"
    EQUATOR_CONFIG = "equator_config"
    STAR_GRAPH = "star_graph"
    PATH_GRAPH = "path_graph"
    CIRCLE_SET = "circle_set"


class ConstructionSpec(BaseModel):
    """A named witness family plus the keyword parameters of its generator."""

    name: ConstructionName
    params: Dict[str, Any] = Field(default_factory=dict)
