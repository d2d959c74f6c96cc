"""Acceptance runs for pyPalatini. From the repository root: ``python -m evals.main [--full] [--only NAME ...]``.

Each app under ``apps/`` exposes one :class:`EvalApp`; results are printed as JSON and the exit status is 0 only when
every selected app passed.
"""
import argparse
import json
import logging
import sys

from pathlib import Path

from evals.apps.EvalApp import find_apps


logger = logging.getLogger('evals')


local_dir = Path(__file__).parent


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog='evals', description='Run the pyPalatini acceptance checks.')
    parser.add_argument('--full', action='store_true', help='include the large tangent-space cases')
    parser.add_argument('--only', nargs='+', default=[], help='run only apps whose name contains one of these')
    parser.add_argument('--list', action='store_true', help='list the apps and exit')
    parser.add_argument('-v', '--verbose', dest='verbosity', action='count', default=0)
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=[logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbosity, 2)],
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )

    applist = find_apps(local_dir.joinpath('apps'))
    if args.list:
        for x in applist:
            print(x.name)
            for line in x.description:
                print(f'    {line}')
        return 0
    if args.only:
        applist = [x for x in applist if any(s.lower() in x.name.lower() for s in args.only)]

    results = []
    for x in applist:
        logger.info('Running %s', x.name)
        result = x.evaluate(args.full)
        logger.info('%s: %s in %.1f s', x.name, 'passed' if result.passed else 'FAILED', result.seconds)
        results.append(result.model_dump())
    print(json.dumps(results, indent=2))
    return 0 if results and all(r['passed'] for r in results) else 1


if __name__ == '__main__':
    sys.exit(main())
