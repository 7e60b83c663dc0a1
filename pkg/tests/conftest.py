"""Shared test configuration.

Unit tests run with the engine's internal self-checks enabled so that any
Groebner basis computed along the way is re-verified (every S-polynomial
reduces to zero).  The acceptance tests disable the flag locally because
they assert wall-clock budgets.
"""

import os

os.environ["SPC_SELF_CHECK"] = "1"
