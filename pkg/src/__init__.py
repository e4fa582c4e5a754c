"""
polycover
Exact polyhedral invariants of monomial ideals and their filtrations
"""

__version__ = "0.1.0"

# Note: modules are imported top-level (src/ on sys.path), not through this package
