"""
sweep: many painleve formulas and verify cases, one output directory each
"""
import concurrent.futures
import logging
import re
from pathlib import Path

from config.settings import EXIT_FAILED, EXIT_OK
from core.errors import ConfigError, ToolkitError
from core.utils import write_report
from systems.checks import CASES, run_check
from systems.manifest import RunManifest
from systems.painleve import theorem1_check
from ui.summary import SummaryTable
from commands.command_manager import Command

logger = logging.getLogger(__name__)


def job_directory(root, index, name):
    slug = re.sub(r'[^A-Za-z0-9.]+', '_', name).strip('_') or 'job'
    return Path(root) / f"{index:03d}_{slug}"


def run_job(index, kind, name, root):
    """Run one sweep entry in its own directory; returns its summary row

    Module level so that process pools can pickle it.
    """
    directory = job_directory(root, index, f"{kind}_{name}")
    directory.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(kind, {'F' if kind == 'painleve' else 'case': name}).start()
    try:
        if kind == 'painleve':
            outcome = theorem1_check(name)
            payload, verdict = outcome.to_dict(), outcome.verdict
        else:
            outcome = run_check(name)
            payload, verdict = outcome.to_dict(), 'pass' if outcome.passed else 'fail'
    except ToolkitError as exc:
        payload, verdict = {'error': str(exc)}, 'error'
    report = directory / 'report.json'
    write_report(report, payload)
    manifest.add_output(report, 'report')
    manifest.add_verdict(name, verdict)
    manifest.stop()
    manifest.save(directory)
    return {'index': index, 'kind': kind, 'name': name, 'verdict': verdict,
            'directory': directory.name}


class SweepCommand(Command):
    name = 'sweep'
    help = "Run several painleve formulas and verify cases, optionally in parallel"

    def add_arguments(self, parser):
        parser.add_argument('--F', action='append', dest='formulas', metavar='F',
                            help="painleve formula (repeatable)")
        parser.add_argument('--case', action='append', dest='cases', choices=sorted(CASES),
                            help="verify case (repeatable)")
        parser.add_argument('--workers', type=int, help="worker processes (1 runs inline)")
        parser.add_argument('--out', help="output directory")

    def jobs(self, args):
        jobs = [('painleve', f) for f in args.formulas or []]
        jobs += [('verify', c) for c in args.cases or []]
        if not jobs:
            raise ConfigError("sweep needs at least one --F or --case")
        return jobs

    def execute(self, jobs, root, workers):
        if workers <= 1:
            return [run_job(i, kind, name, root) for i, (kind, name) in enumerate(jobs)]
        rows = []
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(run_job, i, kind, name, root) for i, (kind, name) in enumerate(jobs)]
            for future in concurrent.futures.as_completed(futures):
                row = future.result()
                logger.info("sweep job %d (%s %s): %s", row['index'], row['kind'], row['name'], row['verdict'])
                rows.append(row)
        return sorted(rows, key=lambda row: row['index'])

    def run(self, args):
        if not args.out:
            raise ConfigError("sweep needs --out DIRECTORY")
        if args.workers is None or args.workers < 1:
            raise ConfigError(f"--workers must be >= 1, got {args.workers}")
        jobs = self.jobs(args)
        root = Path(args.out)
        root.mkdir(parents=True, exist_ok=True)
        manifest = self.new_manifest(args)
        rows = self.execute(jobs, root, args.workers)

        passed = all(row['verdict'] == 'pass' for row in rows)
        table = SummaryTable(f"sweep of {len(rows)} job(s)")
        for row in rows:
            table.add_row(f"{row['kind']} {row['name']}", row['verdict'], passed=row['verdict'] == 'pass')
            manifest.add_verdict(f"{row['kind']}:{row['name']}", row['verdict'])
        table.set_verdict(passed)
        table.show()

        summary = self.write_report(root / 'sweep.json', {'jobs': rows, 'passed': passed})
        manifest.add_output(summary, 'summary')
        for row in rows:
            manifest.add_output(root / row['directory'] / 'report.json', 'report')
        self.finish_manifest(manifest, summary)
        return EXIT_OK if passed else EXIT_FAILED
