"""upo: exact decision procedures on finite uniform preorders, effective
partial combinatory algebras, and the logic and categories built over them.

The kernel (`relcore`) does finite relation algebra; `uord` holds uniform
preorders and their predicate semantics; `meets`, `dlogic`, `relcomp` add
finite-completeness data, the quantification monads, and relational
completeness; `topos` builds categories of partial equivalence relations
over a decidable logic fiber; `udist` does distributor calculus; `cli`
exposes all checks on JSON instance files.
"""

__version__ = "0.1.0"
