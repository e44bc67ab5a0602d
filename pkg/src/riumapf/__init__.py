"""Planning for anonymous agents that must stay more than r hops apart."""
from .errors import (CapReached, InfeasibleAssignment, InvalidGraph, InvalidInstance, InvalidPlan,
                     NoPlan, PreconditionViolated, SearchTimeout, SolverFailure, Stalled)
from .exact import exact_bfs_solve, exact_bfs_solve_galactic
from .graph import Graph, bfs_distances, grid_graph, is_distance_r_independent, neighborhood_r, next_step_r
from .ilp import build_bounded_model, build_galactic_model, export_lp, naive_feasible
from .instance import Instance, plan_metrics, sample_random_instance, validate_plan
from .kernel import GalacticGraph, kernelize
from .lacam import iu_lacam_solve
from .maps import load_graph, load_map
from .pibt import IUPIBT, run_pibt

__all__ = [
    "CapReached", "InfeasibleAssignment", "InvalidGraph", "InvalidInstance", "InvalidPlan", "NoPlan",
    "PreconditionViolated", "SearchTimeout", "SolverFailure", "Stalled", "exact_bfs_solve",
    "exact_bfs_solve_galactic", "Graph", "bfs_distances", "grid_graph", "is_distance_r_independent",
    "neighborhood_r", "next_step_r", "build_bounded_model", "build_galactic_model", "export_lp",
    "naive_feasible", "Instance", "plan_metrics", "sample_random_instance", "validate_plan",
    "GalacticGraph", "kernelize", "iu_lacam_solve", "load_graph", "load_map", "IUPIBT", "run_pibt",
]
