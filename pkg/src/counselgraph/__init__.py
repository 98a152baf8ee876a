"""counselgraph: a knowledge-graph-grounded counseling-support engine.

Subpackages: kg (typed graph store and traversal), corpus (case records),
retrieval (dense search), generation (grounded drafting), evaluation
(metrics and reports), service (engine, config, HTTP API).
"""

from counselgraph.errors import CounselGraphError

__version__ = "0.1.0"
