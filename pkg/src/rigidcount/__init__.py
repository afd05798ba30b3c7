"""Counting realizations of minimally rigid graphs via calligraph classes."""

from .classes import ClassVector, Engine, class_product, get_class, get_nor, glue
from .graph import MarkedGraph, is_calligraph, is_minimally_rigid, is_thin, parse_graph
from .oracle import count_realizations_oracle

__all__ = [
    "ClassVector",
    "Engine",
    "MarkedGraph",
    "class_product",
    "count_realizations_oracle",
    "get_class",
    "get_nor",
    "glue",
    "is_calligraph",
    "is_minimally_rigid",
    "is_thin",
    "parse_graph",
]

__version__ = "0.1.0"
