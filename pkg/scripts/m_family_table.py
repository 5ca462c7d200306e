import argparse

from brtjurina.config import Config
from brtjurina.families import (
    MU_BR_CLOSED_FORM, TAU_BR_CLOSED_FORM, fit_closed_form
)
from brtjurina.report import m_family_table, table_text, write_table_csv
from brtjurina.utils import configure_logging


def check_fit(rows, column, expected, logger):
    values = {row['m']: int(row[column]) for row in rows
              if row[column].is_finite}
    fitted = fit_closed_form(values)
    logger.info(f'{column} fitted on m <= {sorted(values)[2]}: {fitted}')
    if fitted != expected:
        logger.warning(f'{column}: fit differs from {expected}')
    for m, value in sorted(values.items())[3:]:
        if fitted(m) != value:
            logger.warning(f'{column}(m={m}) = {value}, fit predicts {fitted(m)}')
        else:
            logger.info(f'{column}(m={m}) = {value} matches the fit')
    return fitted


def main(args):
    config = Config(args.config_path)
    logger = configure_logging(config.get('log_path'))

    m_max = max(args.m_max or config.get_table('m_max'), 3)
    rows = m_family_table(
        1, m_max,
        workers=config.get_table('workers'),
        rf_cap=config.get_rf_cap(),
        order=config.get_order()
    )
    print(table_text(rows))
    check_fit(rows, 'mu_BR', MU_BR_CLOSED_FORM, logger)
    check_fit(rows, 'tau_BR', TAU_BR_CLOSED_FORM, logger)
    if args.csv_path:
        write_table_csv(rows, args.csv_path)


if __name__ == '__main__':
    parser = argparse.ArgumentParser()
    parser.add_argument('--config_path', type=str,
                        default='scripts/brtjurina_config.json',
                        help='Path to brtjurina_config.json.')
    parser.add_argument('--m_max', type=int, default=None,
                        help='Largest m of the table (at least 3).')
    parser.add_argument('--csv_path', type=str, default=None,
                        help='Where to save the table as csv.')
    args = parser.parse_args()

    main(args)
