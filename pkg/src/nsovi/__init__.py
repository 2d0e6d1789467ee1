"""Exact finite-instance solver and checker for split ordered variational
inequalities over cone-ordered rational spaces."""

from .model import Instance, load_instance, save_instance
from .orders import ConeOrder, FinitePoset
from .solver import ascend, enumerate_solutions, m_map, pi_map

__all__ = [
    "ConeOrder",
    "FinitePoset",
    "Instance",
    "ascend",
    "enumerate_solutions",
    "load_instance",
    "m_map",
    "pi_map",
    "save_instance",
]
