"""Batch figure rendering for the data files the entrack CLI writes.

This package never computes physics: it draws exactly the columns and the
embedded boundary-curve samples found in the input CSV/JSON files, and the
command front end asserts that rendering pulled in no simulation code.
"""

__version__ = "0.1.0"
