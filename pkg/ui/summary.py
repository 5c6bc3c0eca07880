"""
Human-readable run summaries for stdout
"""
import math
import sys


def format_value(value):
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, float):
        if math.isnan(value):
            return 'n/a'
        return f"{value:.3e}" if value and (abs(value) < 1e-3 or abs(value) >= 1e4) else f"{value:.6g}"
    if isinstance(value, (list, tuple)):
        return ', '.join(format_value(v) for v in value)
    return str(value)


class SummaryTable:
    """Aligned label/value rows with an optional pass mark per row"""
    def __init__(self, title):
        self.title = title
        self.rows = []
        self.verdict = None

    def add_row(self, label, value, limit=None, passed=None):
        self.rows.append((label, value, limit, passed))
        return self

    def add_check(self, label, value, limit):
        """Row that passes when value < limit"""
        return self.add_row(label, value, limit, value < limit)

    def set_verdict(self, passed):
        self.verdict = 'PASS' if passed else 'FAIL'

    @property
    def passed(self):
        return all(row[3] is not False for row in self.rows)

    def render(self):
        width = max([len(label) for label, *_ in self.rows] + [8])
        lines = [self.title, '-' * len(self.title)]
        for label, value, limit, passed in self.rows:
            line = f"  {label.ljust(width)}  {format_value(value)}"
            if limit is not None:
                line += f"  (< {format_value(limit)})"
            if passed is not None:
                line += '  ok' if passed else '  FAILED'
            lines.append(line)
        if self.verdict:
            lines.append(f"  verdict: {self.verdict}")
        return '\n'.join(lines) + '\n'

    def show(self, stream=None):
        (stream or sys.stdout).write(self.render())


def painleve_summary(report):
    table = SummaryTable(f"Painleve test for F(t) = {report.F}")
    table.add_row('leading order', f"p = {report.leading.p}, q = {report.leading.q}")
    table.add_row('u0 v0', report.leading.to_dict()['product_constraint'])
    table.add_row('resonances', report.resonances)
    table.add_row('n=3 residual norm', report.n3_residual_norm)
    table.add_row(f"n=4 residual zero ({report.n4_form})", report.n4_identically_zero)
    table.add_row('2F_t^2 - F F_tt', report.constraint_residual)
    table.add_row('d2/dt2 (1/F) zero', report.inverse_check_zero)
    table.add_row('exact test', report.exact)
    for note in report.notes:
        table.add_row('note', note)
    table.set_verdict(report.passed)
    return table


def checks_summary(title, checks, passed):
    """checks: dicts with name, value and optional limit"""
    table = SummaryTable(title)
    for check in checks:
        limit = check.get('limit')
        ok = check.get('passed')
        table.add_row(check['name'], check['value'], limit, ok)
    table.set_verdict(passed)
    return table
