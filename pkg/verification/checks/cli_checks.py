"""
Reproducibility of the written outputs.
"""

import pandas as pd

from pipeline.builders import build_observation, build_scenario, sphere_spaces
from pipeline.simulation import simulate
from storage.writers import format_trace
from ..registry import register
from ..report import CheckResult

MODULE = 'cli_pipeline'

DETERMINISM_STEPS = 16


@register('deterministic_outputs', MODULE)
def deterministic_outputs(ctx) -> CheckResult:
    """Two independent runs of the same configuration produce identical CSV text"""
    grid = ctx.grid(steps=DETERMINISM_STEPS)
    obs = build_observation(ctx.config)
    texts = []
    for _ in range(2):
        spaces = sphere_spaces(ctx.level, ctx.config.mesh.shells, ctx.config.mesh.radius)
        scenario = build_scenario(spaces, ctx.material, ctx.settings)
        run = simulate(scenario, ctx.incident(), grid, obs, ctx.threads,
                       ctx.config.observation.pressure_field)
        texts.append({name: format_trace(frame) for name, frame in run.trace.frames().items()})
    rows = [{'probe': name, 'identical': texts[0][name] == texts[1][name]} for name in texts[0]]
    frame = pd.DataFrame(rows)
    differing = frame.loc[~frame['identical'], 'probe'].tolist()
    return CheckResult(passed=not differing, values={'probes': len(frame), 'differing': len(differing)},
                       samples=frame, message=f"differing: {differing}" if differing else '')
