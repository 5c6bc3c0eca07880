"""
verify: named acceptance cases against closed forms and exact identities
"""
import logging

from config.settings import EXIT_FAILED, EXIT_OK
from systems.checks import CASES, run_check
from ui.summary import checks_summary
from commands.command_manager import Command

logger = logging.getLogger(__name__)


class VerifyCommand(Command):
    name = 'verify'
    help = "Run one named verification case and report PASS/FAIL"

    def add_arguments(self, parser):
        parser.add_argument('--case', choices=sorted(CASES))
        parser.add_argument('--out', help="JSON report path")

    def run(self, args):
        manifest = self.new_manifest(args)
        result = run_check(args.case)
        checks_summary(f"verify {result.case}", result.checks, result.passed).show()
        if args.out:
            manifest.add_output(self.write_report(args.out, result.to_dict()), 'report')
            manifest.add_verdict(result.case, 'pass' if result.passed else 'fail')
            self.finish_manifest(manifest, args.out)
        return EXIT_OK if result.passed else EXIT_FAILED
