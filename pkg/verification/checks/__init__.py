"""
Property checks, one module per package under test. Importing this package
registers every check with the verification registry.
"""

from . import (  # noqa: F401
    bem_checks,
    cli_checks,
    coupling_checks,
    cq_checks,
    fem_checks,
    field_checks,
    mesh_checks,
    model_checks,
    suite_checks,
)
