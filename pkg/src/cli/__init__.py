# src/cli/__init__.py
from .schemas import COMMANDS, PIPELINE, JobConfig, ResidualRow, Certificate, StageResult, Report
from .commands import Context, COMMAND_TABLE
from .runner import run, run_stage, stages_for
from .renderer import render, render_json, render_text

__all__ = [
    'COMMANDS',
    'PIPELINE',
    'JobConfig',
    'ResidualRow',
    'Certificate',
    'StageResult',
    'Report',
    'Context',
    'COMMAND_TABLE',
    'run',
    'run_stage',
    'stages_for',
    'render',
    'render_json',
    'render_text',
]
