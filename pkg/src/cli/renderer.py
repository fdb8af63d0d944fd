"""
Report rendering: JSON through pydantic, text through a Jinja2 template.
"""

from pathlib import Path

from jinja2 import Environment, FileSystemLoader

from .schemas import Report

template_dir = Path(__file__).parent / "templates"
env = Environment(loader=FileSystemLoader(str(template_dir)), trim_blocks=True, lstrip_blocks=True)


def render_json(report: Report) -> str:
    return report.model_dump_json(indent=2)


def render_text(report: Report) -> str:
    return env.get_template("report.txt.j2").render(report=report, stages=report.stages)


def render(report: Report, fmt: str = 'json') -> str:
    if fmt == 'text':
        return render_text(report)
    return render_json(report)
