"""
Default configuration values for every section
"""

from dataclasses import asdict
from typing import Any, Dict

from .models import SECTIONS


def get_default_config() -> Dict[str, Any]:
    """Get default configuration for all sections"""
    defaults = {name: asdict(section_cls()) for name, section_cls in SECTIONS.items()}
    # None selects the logical core count
    defaults['run']['threads'] = None
    return defaults
