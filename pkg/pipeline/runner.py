"""
End-to-end run orchestration: solve, verify, or both, and the exit status.
"""

import logging
import sys
import time
from typing import Optional

from config import ConfigLoader
from fields.energy import energy_report, pulse_passed_time, trailing_decay
from model.errors import FsiError
from storage import OutputManager
from verification.engine import VerificationEngine
from .builders import (
    build_grid, build_incident, build_material, build_observation, build_scenario,
    build_settings, build_spaces_from_config, check_source,
)
from .simulation import SimulationResult, simulate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERIFICATION_FAILED = 2


def solve(config, output: Optional[OutputManager] = None) -> SimulationResult:
    """
    Coupled run described by ``config``; writes traces, energy, snapshots
    and the optional matrix dump into the output directory.
    """
    output = output or OutputManager(config.output.directory)
    spaces = build_spaces_from_config(config)
    material = build_material(config)
    scenario = build_scenario(spaces, material, build_settings(config))
    incident = build_incident(config)
    check_source(config, spaces.surface)
    grid = build_grid(config)
    obs = build_observation(config)
    obs.validate(spaces)

    if config.output.dump_matrices:
        output.dump_matrices(scenario.problem.assembler.assemble(grid.frequencies()[0]))

    result = simulate(scenario, incident, grid, obs, config.run.threads,
                      config.observation.pressure_field)
    trace = result.trace
    if not trace.is_finite():
        raise FsiError("non-finite values in the reconstructed traces", module='field_eval')

    output.write_traces(trace.frames())
    if trace.displacement is not None:
        energy = energy_report(trace, scenario.fem)
        output.write_energy(energy)
        trailing_decay(energy, pulse_passed_time(incident, spaces.surface))
        if config.output.snapshots:
            output.write_snapshots(spaces.volume, trace.displacement, config.output.snapshots)
    logger.info(f"Reality residue of the traces: {trace.reality_residue:.2e}")
    return result


def verify(config) -> VerificationEngine:
    engine = VerificationEngine(config)
    engine.run_all()
    return engine


def run(config) -> int:
    """
    Execute the configured mode

    Returns:
        int: 0 on success, 2 when an asserted property fails
    """
    started = time.perf_counter()
    mode = config.run.mode
    logger.info(f"Starting {mode} run, output to {config.output.directory}")
    status = EXIT_OK
    if mode in ('solve', 'both'):
        solve(config)
    if mode in ('verify', 'both'):
        engine = verify(config)
        summary = engine.summary()
        logger.info(f"Verification: {summary}")
        if not engine.passed:
            status = EXIT_VERIFICATION_FAILED
    logger.info(f"Run finished in {time.perf_counter() - started:.1f}s with status {status}")
    return status


def run_config(config_path: Optional[str], mode: Optional[str] = None) -> int:
    """
    Load ``config_path`` and run it. Any failure becomes exit status 1 with
    its module provenance on stderr: FsiError keeps its own module, file
    system errors report ``storage`` and anything else ``cli_pipeline``.
    """
    try:
        overrides = {'run': {'mode': mode}} if mode else None
        config = ConfigLoader().load(config_path=config_path, overrides=overrides)
        config.setup_logging()
        return run(config)
    except FsiError as e:
        return _fail(e)
    except OSError as e:
        return _fail(FsiError(f"{type(e).__name__}: {e}", module='storage'), e)
    except Exception as e:
        return _fail(FsiError(f"{type(e).__name__}: {e}", module='cli_pipeline'), e)


def _fail(error: FsiError, cause: Optional[BaseException] = None) -> int:
    if cause is None:
        logger.error(f"Run failed: {error}")
    else:
        logger.error(f"Run failed: {error}", exc_info=cause)
    print(str(error), file=sys.stderr)
    return EXIT_ERROR
