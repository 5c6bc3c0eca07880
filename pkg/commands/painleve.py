"""
painleve: integrability verdict for one coefficient F(t)
"""
import logging

from config.settings import EXIT_FAILED, EXIT_OK
from core.errors import ConfigError
from systems.painleve import COMPATIBILITY_FORMS, theorem1_check
from ui.summary import painleve_summary
from commands.command_manager import Command

logger = logging.getLogger(__name__)


class PainleveCommand(Command):
    name = 'painleve'
    help = "WTC analysis: resonances, compatibility residuals and the 2F_t^2 - F F_tt verdict"

    def add_arguments(self, parser):
        parser.add_argument('--F', help="coefficient formula in t, e.g. '1/(2*t+3)'")
        parser.add_argument('--psi', help="singular manifold xi = x + psi(t) (default t^2)")
        parser.add_argument('--u0', help="leading coefficient u0(t) (default 1)")
        parser.add_argument('--n4-form', choices=COMPATIBILITY_FORMS,
                            help="n=4 brackets: corrected weights or as printed")
        parser.add_argument('--out', help="JSON report path")

    def run(self, args):
        if not args.F:
            raise ConfigError("painleve needs --F (flag or config)")
        manifest = self.new_manifest(args)
        report = theorem1_check(args.F, args.psi, args.u0, args.n4_form)
        painleve_summary(report).show()
        if args.out:
            manifest.add_output(self.write_report(args.out, report.to_dict()), 'report')
            manifest.add_verdict('theorem1', report.verdict)
            self.finish_manifest(manifest, args.out)
        return EXIT_OK if report.passed else EXIT_FAILED
