#!/usr/bin/env python3
"""
Report Rendering

Text reports come from built-in Jinja2 templates; JSON reports are plain
dictionaries serialized with sorted keys so output is stable.
"""

import json
import logging
from typing import Any, Dict

from jinja2 import DictLoader, Environment, StrictUndefined

logger = logging.getLogger(__name__)


class ReportRenderer:
    """Render command results as text or JSON"""

    def __init__(self):
        # Terminal text, not HTML
        self.jinja_env = Environment(
            loader=DictLoader(self._get_builtin_templates()),
            autoescape=False,  # nosec B701
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
            undefined=StrictUndefined,
        )

    def render(self, name: str, **context: Any) -> str:
        template = self.jinja_env.get_template(f"{name}.j2")
        return template.render(**context)

    @staticmethod
    def to_json(data: Dict[str, Any]) -> str:
        return json.dumps(data, indent=2, sort_keys=True) + "\n"

    def _get_builtin_templates(self) -> Dict[str, str]:
        return {
            "parse.j2": """\
code:       {{ code }}
canonical:  {{ canonical }}
components: {{ components }}
chords:     {{ chords }}
""",
            "invariant.j2": """\
code:   {{ code }}
word:   {{ word | join(' ') if word else 'e' }}
point:  ({{ x }},{{ y }})
L:      {{ L }}
parity:
{% for chord, label in parity.items() %}
  {{ chord }}: {{ label }}
{% endfor %}
""",
            "word.j2": """\
word:    {{ word | join(' ') if word else 'e' }}
reduced: {{ reduced | join(' ') if reduced else 'e' }}
point:   ({{ x }},{{ y }})
{% if L is not none %}
L:       {{ L }}
{% else %}
L:       undefined (x = 1)
{% endif %}
""",
            "link.j2": """\
{{ operation }}: {{ before }} -> {{ after }}
""",
            "orbit.j2": """\
orbit of {{ code }}: {{ size }} diagrams{% if not complete %} (budget exhausted){% endif %}

{% for member in members %}
  {{ member }}
{% endfor %}
""",
            "equiv.j2": """\
verdict:  {{ verdict }}
reason:   {{ reason }}
explored: {{ explored }}
{% if invariants %}
L:        {{ invariants | join(' vs ') }}
{% endif %}
""",
            "verify.j2": """\
ok:        {{ ok }}
genus:     {{ genus if genus is not none else 'undefined' }}
reebTree:  {{ reebIsTree }}
events:    {{ counts.births }} births, {{ counts.deaths }} deaths, {{ counts.saddles }} saddles
{% if theorem is defined %}
theorem:   {{ theorem }}
{% endif %}
levels:
{% for level in levels %}
  {{ '%3d' | format(level.index) }} {{ '%-9s' | format(level.event or 'initial') }} {{ level.code or '(empty)' }}  L={{ level.L }}
{% endfor %}
{% if violations %}
violations:
{% for v in violations %}
  {{ ('[%d] ' % v.event) if v.event is defined else '' }}{{ v.kind }}: {{ v.message }}
{% endfor %}
{% endif %}
""",
            "search.j2": """\
result:   {{ result }}
explored: {{ explored }}
{% if obstruction is defined %}
obstruction: L = {{ obstruction.L }}
{% endif %}
{% if movie is defined %}
initial:  {{ movie.initial }}
{% for event in movie.events %}
  {{ loop.index0 }}: {{ event.kind }} {{ event | dictsort | rejectattr(0, 'equalto', 'kind') | map('join', '=') | join(' ') }}
{% endfor %}
{% endif %}
""",
            "movie.j2": """\
initial: {{ initial }}
{% for event in events %}
  {{ loop.index0 }}: {{ event.kind }} {{ event | dictsort | rejectattr(0, 'equalto', 'kind') | map('join', '=') | join(' ') }}
{% endfor %}
{% if labels %}
labels:
{% for lifetime, label in labels | dictsort %}
  {{ lifetime }}: {{ label.parity }}{% if label.type is defined %} {{ label.type }}{% endif %}

{% endfor %}
{% endif %}
""",
            "catalog.j2": """\
{% for entry in entries %}
{{ '%-18s' | format(entry.name) }} L={{ entry.computedL }}{% if entry.expectedL is not none %} (expected {{ entry.expectedL }}){% endif %}  {{ entry.code }}
{% if entry.note %}
{{ ' ' * 18 }} {{ entry.note }}
{% endif %}
{% endfor %}
""",
            "census.j2": """\
  n  diagrams  moves   adds  oddcnt  mod4  mod8ok  base  move  axiom  fmap
{% for row in rows %}
{{ '%3d %9d %6d %6d %7d %5d %7d %5d %5d %6d %5d' | format(row.n, row.diagrams, row.movesChecked, row.additionsChecked, row.oddCountFailures, row.mod4Failures, row.mod8Divisible, row.basepointFailures, row.moveFailures, row.axiomViolations, row.fmapFailures) }}
{% endfor %}
{% for row in rows %}
n={{ row.n }} L: {% for value, count in row.L.items() %}{{ value }}x{{ count }} {% endfor %}

{% endfor %}
census {{ 'passed' if ok else 'FAILED' }}
""",
        }


_renderer = None


def get_renderer() -> ReportRenderer:
    global _renderer
    if _renderer is None:
        _renderer = ReportRenderer()
    return _renderer
