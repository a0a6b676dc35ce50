"""
Command-line entry point: ``run``, ``verify`` and ``mesh`` commands.
"""

import argparse
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv

from mesh.builders import ball_volume, sphere_surface
from mesh.io import write_mesh
from model.errors import FsiError
from .runner import EXIT_ERROR, EXIT_OK, run_config

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='fsi',
        description='Time-domain acoustic scattering by an elastic body (CQ + FEM/BEM coupling)',
    )
    commands = parser.add_subparsers(dest='command', required=True)

    run_parser = commands.add_parser('run', help='Run the mode named in the config (solve, verify or both)')
    run_parser.add_argument('config', help='YAML or key = value configuration file')

    verify_parser = commands.add_parser('verify', help='Run the verification suite only')
    verify_parser.add_argument('config', help='YAML or key = value configuration file')

    mesh_parser = commands.add_parser('mesh', help='Write a builtin sphere mesh')
    mesh_parser.add_argument('--sphere-level', type=int, required=True, help='Refinement level k >= 0')
    mesh_parser.add_argument('--out', required=True, help='Output mesh path')
    mesh_parser.add_argument('--radius', type=float, default=1.0)
    mesh_parser.add_argument('--volume', action='store_true',
                             help='Write the tetrahedral ball instead of the surface')
    mesh_parser.add_argument('--shells', type=int, default=2, help='Concentric shells of the ball')
    return parser


def write_sphere(level: int, out: str, radius: float = 1.0, volume: bool = False, shells: int = 2) -> str:
    surface = sphere_surface(level, radius)
    return write_mesh(out, ball_volume(surface, shells) if volume else surface)


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)

    if args.command == 'mesh':
        logging.basicConfig(level=logging.INFO, format='%(levelname)s - %(message)s')
        try:
            path = write_sphere(args.sphere_level, args.out, args.radius, args.volume, args.shells)
        except (FsiError, OSError) as e:
            print(str(e), file=sys.stderr)
            return EXIT_ERROR
        print(f"Mesh written to {path}")
        return EXIT_OK

    mode = 'verify' if args.command == 'verify' else None
    return run_config(args.config, mode=mode)


if __name__ == '__main__':
    sys.exit(main())
