"""Orlik-Solomon algebras of the arrangements T(r,n), forest bases and twisted cohomology."""

__version__ = "0.1.0"
