#!/usr/bin/env python3
"""
Time-domain fluid-structure scattering solver

Usage:
    python fsi.py run config/config.yaml
    python fsi.py verify config/sphere.cfg
    python fsi.py mesh --sphere-level 3 --out meshes/sphere3.surf
"""

import sys

from pipeline.cli import main

if __name__ == '__main__':
    sys.exit(main())
