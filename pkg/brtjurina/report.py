"""Per-case reports and the m-family table, as JSON, aligned text or CSV."""
import json
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import pandas as pd
from tqdm import tqdm

from brtjurina.errors import HypothesisError
from brtjurina.families import m_family
from brtjurina.identities import VERIFIERS
from brtjurina.invariants import INVARIANT_NAMES, CaseComputation, NotFound
from brtjurina.parser import parse_case
from brtjurina.standard_basis import Dimension
from brtjurina.utils import get_logger


logger = get_logger('report')

TABLE_COLUMNS = ['m', 'mu_BR', 'tau_BR', 'ratio', 'rf']


def _json_value(value):
    if value is None:
        return None
    if isinstance(value, Dimension):
        return value.to_json()
    if isinstance(value, NotFound):
        return str(value)
    return value


def _text_value(value):
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return str(value)


def default_invariants(case):
    names = list(INVARIANT_NAMES)
    if case.n != 2:
        names.remove('gsv_foliation')
    return names


class InvariantReport:
    """All computed invariants and identity checks of one case."""

    def __init__(self, case, options):
        self.case = case
        self.options = dict(options)
        self.invariants = {}
        self.flags = {}
        self.identities = {}
        self.skipped = {}

    @property
    def all_hold(self):
        return all(r.holds for r in self.identities.values())

    def to_json(self):
        return {
            'case': self.case,
            'options': dict(self.options),
            'invariants': {k: _json_value(v)
                           for k, v in self.invariants.items()},
            'flags': dict(self.flags),
            'identities': {k: r.to_json() for k, r in self.identities.items()},
            'skipped': dict(self.skipped),
        }

    def to_text(self):
        rows = [('case', self.case)]
        rows += [(k, _text_value(v)) for k, v in self.options.items()]
        lines = _aligned(rows)
        if self.invariants:
            lines.append('invariants')
            lines += _aligned([(k, _text_value(v))
                               for k, v in self.invariants.items()], indent=2)
        if self.flags:
            lines.append('flags')
            lines += _aligned([(k, _text_value(v))
                               for k, v in self.flags.items()], indent=2)
        if self.identities:
            lines.append('identities')
            rows = []
            for name, r in self.identities.items():
                detail = ', '.join(f'{k} = {v}' for k, v in r.residuals.items())
                detail = '; '.join([d for d in [detail] + r.notes if d])
                rows.append((name, f'{r.status}  ({detail})' if detail
                             else r.status))
            lines += _aligned(rows, indent=2)
        if self.skipped:
            lines.append('skipped')
            lines += _aligned(list(self.skipped.items()), indent=2)
        return '\n'.join(lines)


def _aligned(rows, indent=0):
    if not rows:
        return []
    width = max(len(k) for k, _ in rows)
    return [f"{' ' * indent}{k.ljust(width)}  {v}" for k, v in rows]


def _hypothesis_text(exc):
    return '; '.join([str(exc)] + exc.diagnostics)


def build_report(case, invariants=None, identities=(), order=None,
                 rf_cap=None, include_invariants=True):
    """Evaluate the selected invariants and identities of `case`.

    Explicitly selected invariants (argument or `option invariants`) raise
    `HypothesisError` when inapplicable; with the default selection such
    invariants are listed under `skipped` instead.
    """
    comp = CaseComputation.from_case(case, order=order, rf_cap=rf_cap)
    explicit = list(invariants or case.options.invariants)
    names = explicit or default_invariants(case)
    if not include_invariants:
        names = []
    options = {'order': comp.order.base.kind.value, 'rf_cap': comp.rf_cap}
    for key, value in case.options.parameters:
        options[key] = str(value)
    report = InvariantReport(case=case.name, options=options)
    for name in names:
        try:
            report.invariants[name] = comp.get(name)
        except HypothesisError as exc:
            if explicit:
                raise
            report.invariants[name] = None
            report.skipped[name] = _hypothesis_text(exc)
            logger.info(f'{case.name}: {name} skipped')
    report.flags['v_invariant'] = comp.v_invariant
    report.flags['x_invariant'] = comp.x_invariant
    for name in identities:
        report.identities[name] = VERIFIERS[name](comp)
    return report


def dumps(document):
    return json.dumps(document, indent=2, sort_keys=False)


# -- m-family table -------------------------------------------------------------

def m_family_row(m, rf_cap=8, order=None):
    case = parse_case(m_family(m), f'm-family [m={m}]')
    comp = CaseComputation.from_case(case, order=order, rf_cap=rf_cap)
    mu, tau = comp.mu_BR, comp.tau_BR
    ratio = (Fraction(int(mu), int(tau))
             if mu.is_finite and tau.is_finite and int(tau) else None)
    return {'m': m, 'mu_BR': mu, 'tau_BR': tau, 'ratio': ratio, 'rf': comp.rf}


def _row_task(args):
    return m_family_row(*args)


def m_family_table(m_min, m_max, workers=1, rf_cap=8, order=None,
                   progress=True):
    """Rows for m_min..m_max in increasing m, whatever the completion order."""
    tasks = [(m, rf_cap, order) for m in range(m_min, m_max + 1)]
    bar = tqdm(total=len(tasks), desc='m-family', disable=not progress)
    rows = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            for row in executor.map(_row_task, tasks):
                rows.append(row)
                bar.update(1)
    else:
        for task in tasks:
            rows.append(_row_task(task))
            bar.update(1)
    bar.close()
    return rows


def table_json(rows):
    document = []
    for row in rows:
        ratio = row['ratio']
        document.append({
            'm': row['m'],
            'mu_BR': _json_value(row['mu_BR']),
            'tau_BR': _json_value(row['tau_BR']),
            'ratio': None if ratio is None else {
                'numerator': ratio.numerator,
                'denominator': ratio.denominator},
            'rf': _json_value(row['rf']),
        })
    return document


def table_frame(rows):
    records = []
    for row in rows:
        ratio = row['ratio']
        records.append({
            'm': row['m'],
            'mu_BR': str(row['mu_BR']),
            'tau_BR': str(row['tau_BR']),
            'ratio': '' if ratio is None else str(ratio),
            'rf': str(row['rf']),
        })
    return pd.DataFrame.from_records(records, columns=TABLE_COLUMNS)


def table_text(rows):
    header = ['m', 'mu_BR', 'tau_BR', 'mu_BR/tau_BR', 'r_f']
    body = []
    for row in rows:
        ratio = row['ratio']
        body.append([str(row['m']), str(row['mu_BR']), str(row['tau_BR']),
                     '-' if ratio is None else f'{float(ratio):.5f}',
                     str(row['rf'])])
    widths = [max(len(r[i]) for r in [header] + body)
              for i in range(len(header))]
    return '\n'.join('  '.join(cell.rjust(w) for cell, w in zip(r, widths))
                     for r in [header] + body)


def write_table_csv(rows, path):
    table_frame(rows).to_csv(path, index=False)
    logger.info(f'table written to {path}')
