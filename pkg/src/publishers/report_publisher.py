"""
Report Publisher Module.
Renders command reports as human-readable text (jinja2 templates) or as a
single JSON document.
"""

import json
from pathlib import Path
from typing import Optional

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from src.algebra.matrix import Permutation, TropMatrix
from src.algebra.semiring import TropScalar, format_token
from src.config import TEMPLATES_DIR
from src.loaders.text_loader import format_matrix

# Verbs that only print one matrix share a template
TEMPLATE_BY_VERB = {
    'maper': 'maper.txt.j2',
    'scale': 'scale.txt.j2',
    'eig': 'eig.txt.j2',
    'solve': 'solve.txt.j2',
    'mateq': 'mateq.txt.j2',
    'tensor': 'matrix.txt.j2',
    'mul': 'matrix.txt.j2',
    'vec': 'matrix.txt.j2',
    'conj': 'matrix.txt.j2',
}


def _perm(permutation: Permutation) -> str:
    return ' '.join(str(x) for x in permutation.one_based())


def _scalars(values) -> str:
    return ' '.join(format_token(x) for x in values)


def _yes_no(flag: bool) -> str:
    return 'yes' if flag else 'no'


def to_jsonable(value):
    """Scalars become grammar tokens, matrices lists of token rows, permutations 1-based lists."""
    if isinstance(value, TropScalar):
        return format_token(value)
    if isinstance(value, TropMatrix):
        return [[format_token(x) for x in row] for row in value.to_rows()]
    if isinstance(value, Permutation):
        return value.one_based()
    if isinstance(value, dict):
        return {key: to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    return value


class ReportPublisher:
    """Renders command reports."""

    def __init__(self, templates_dir: Optional[Path] = None):
        """
        Initialize the publisher.

        Args:
            templates_dir: Directory holding the ``*.txt.j2`` report templates
        """
        self.templates_dir = Path(templates_dir or TEMPLATES_DIR)
        self.env = Environment(
            loader=FileSystemLoader(str(self.templates_dir)),
            undefined=StrictUndefined,
            trim_blocks=True,
            lstrip_blocks=True,
        )
        self.env.filters.update(
            scalar=format_token,
            scalars=_scalars,
            matrix=format_matrix,
            perm=_perm,
            yes_no=_yes_no,
        )

    def render_text(self, report: dict) -> str:
        template = self.env.get_template(TEMPLATE_BY_VERB[report['verb']])
        return template.render(**report).rstrip('\n')

    def render_json(self, report: dict) -> str:
        return json.dumps(to_jsonable(report), indent=2, ensure_ascii=False)

    def render(self, report: dict, output_format: str = 'text') -> str:
        """
        Render a report.

        Args:
            report: Dict with a 'verb' key plus library values
            output_format: 'text' or 'json'

        Returns:
            The rendered document
        """
        if output_format == 'json':
            return self.render_json(report)
        return self.render_text(report)
