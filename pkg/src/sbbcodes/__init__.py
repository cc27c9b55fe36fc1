"""Weight-4 subsystem bivariate bicycle codes: algebra, verification and search."""

from __future__ import annotations

__version__ = "0.1.0"
