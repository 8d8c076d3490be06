# -*- coding: utf-8 -*-

"""Report documents written by the command line interface, in text, JSON and CSV."""

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional

from mcgz2.constants import REPORT_SCHEMA
from mcgz2.util import ToJSONCustomEncoder

__all__ = [
    'Check',
    'ReportDocument',
    'FORMATS',
]

FORMATS = ('text', 'json', 'csv')


@dataclass
class Check:
    """A single named verification."""

    name: str
    passed: bool
    detail: str = ''

    def to_json(self):
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return {'name': self.name, 'passed': self.passed, 'detail': self.detail}


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if value is None:
        return ''
    if isinstance(value, (list, tuple)):
        return ' '.join(_cell(v) for v in value)
    return str(value)


@dataclass
class ReportDocument:
    """The outcome of one command: result rows plus the checks that decide the exit status."""

    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    registry_version: Optional[str] = None
    results: List[Dict[str, Any]] = field(default_factory=list)
    checks: List[Check] = field(default_factory=list)
    cache: Dict[str, int] = field(default_factory=dict)
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        """True if every check passed."""
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[Check]:
        """The checks that failed."""
        return [check for check in self.checks if not check.passed]

    def add_result(self, **row) -> None:
        """Append a result row."""
        self.results.append(row)

    def check(self, name: str, passed: bool, detail: str = '') -> bool:
        """Record a check and return its outcome."""
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def to_json(self):
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return {
            'schema': REPORT_SCHEMA,
            'command': self.command,
            'inputs': self.inputs,
            'registry_version': self.registry_version,
            'results': self.results,
            'checks': [check.to_json() for check in self.checks],
            'cache': self.cache,
            'elapsed_seconds': round(self.elapsed_seconds, 6),
        }

    def render(self, fmt: str = 'text') -> str:
        """Render in one of :data:`FORMATS`."""
        if fmt == 'json':
            return self.to_json_text()
        if fmt == 'csv':
            return self.to_csv()
        if fmt == 'text':
            return self.to_text()
        raise ValueError(f'unknown format: {fmt}')

    def to_json_text(self) -> str:
        """Render as an indented JSON document."""
        return json.dumps(self, cls=ToJSONCustomEncoder, indent=2)

    def _columns(self) -> List[str]:
        columns: List[str] = []
        for row in self.results:
            for key in row:
                if key not in columns:
                    columns.append(key)
        return columns

    def to_csv(self) -> str:
        """Render one row per result, followed by one row per check with ``kind=check``."""
        columns = ['kind'] + self._columns()
        for extra in ('name', 'passed', 'detail'):
            if extra not in columns:
                columns.append(extra)
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator='\n')
        writer.writeheader()
        for row in self.results:
            writer.writerow({'kind': 'result', **{key: _cell(value) for key, value in row.items()}})
        for check in self.checks:
            writer.writerow({'kind': 'check', 'name': check.name, 'passed': _cell(check.passed),
                             'detail': check.detail})
        return buffer.getvalue()

    def to_text(self) -> str:
        """Render as aligned columns with a summary of the checks."""
        lines = [f'{self.command} (registry {self.registry_version})']
        columns = self._columns()
        if columns:
            table = [[_cell(row.get(column)) for column in columns] for row in self.results]
            widths = [max(len(column), *(len(line[i]) for line in table)) for i, column in enumerate(columns)]
            lines.append('  '.join(column.ljust(width) for column, width in zip(columns, widths)).rstrip())
            lines.append('  '.join('-' * width for width in widths))
            for line in table:
                lines.append('  '.join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip())
        if self.checks:
            lines.append('')
            for check in self.checks:
                status = 'PASS' if check.passed else 'FAIL'
                lines.append(f'[{status}] {check.name}' + (f': {check.detail}' if check.detail else ''))
            lines.append(f'{len(self.checks) - len(self.failures)}/{len(self.checks)} checks passed')
        if self.cache:
            lines.append('cache: ' + ', '.join(f'{key}={value}' for key, value in self.cache.items()))
        return '\n'.join(lines)

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> 'ReportDocument':
        """Rebuild a report from its JSON form."""
        return cls(
            command=data['command'],
            inputs=dict(data.get('inputs', {})),
            registry_version=data.get('registry_version'),
            results=list(data.get('results', [])),
            checks=[Check(**check) for check in data.get('checks', [])],
            cache=dict(data.get('cache', {})),
            elapsed_seconds=data.get('elapsed_seconds', 0.0),
        )
