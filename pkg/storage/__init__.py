"""
Run output storage
Writes probe traces, verification reports, energy series, VTK snapshots and
matrix dumps as plain files
"""

from .writers import (
    OutputManager,
    format_trace,
    write_report,
    write_samples,
)

# Global output manager, one per output directory
_output_manager = None


def get_output(directory=None):
    """
    Get or create the output manager for ``directory``

    Args:
        directory (str): Output directory; reuses the current one when None

    Returns:
        OutputManager: Output manager instance
    """
    global _output_manager

    if _output_manager is None or (directory is not None and directory != _output_manager.directory):
        _output_manager = OutputManager(directory or 'output')
        _output_manager.initialize()

    return _output_manager


def store_traces(frames, directory=None):
    """
    Store a set of probe traces

    Args:
        frames (dict): Probe name to DataFrame
        directory (str): Optional output directory

    Returns:
        list: Written paths
    """
    return get_output(directory).write_traces(frames)


__all__ = [
    'OutputManager',
    'format_trace',
    'write_report',
    'write_samples',
    'get_output',
    'store_traces',
]
