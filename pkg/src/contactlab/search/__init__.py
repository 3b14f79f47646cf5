"""Enumeration of small contact structures and countermodel search."""

from .enumerate import enumerate_bca, enumerate_bwca
from .suite import run_paper_suite, search_countermodel

__all__ = ["enumerate_bca", "enumerate_bwca", "run_paper_suite", "search_countermodel"]
