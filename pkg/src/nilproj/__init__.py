"""nilproj: exact projectivity detection for modules over restricted
enveloping algebras of p-nilpotent restricted Lie algebras.

The detection criterion restricts a module to the one-dimensional restricted
subalgebras spanned by null-cone elements, over the base field, its finite
extensions, and the generic point of the null cone; an independent
dimension-count oracle and an H^1-vanishing check cross-validate every verdict.
"""

__version__ = "0.1.0"

from .fields import field_make  # noqa: F401
