"""
transform: push a gridded slice through a composition of symmetry maps
"""
import logging
from pathlib import Path

from config.settings import EXIT_OK
from core.errors import ConfigError
from entities.field import read_fields_csv, write_fields_csv
from systems.transform import TransformSpec, transform_field
from ui.summary import SummaryTable
from commands.command_manager import Command

logger = logging.getLogger(__name__)


def select_slice(fields, t=None):
    """Last slice, or the slice whose time is closest to t"""
    if not fields:
        raise ConfigError("input holds no slices")
    if t is None:
        return fields[-1]
    chosen = min(fields, key=lambda f: abs(f.time - t))
    if abs(chosen.time - t) > 1e-9 * max(1.0, abs(t)):
        raise ConfigError(f"no slice at t={t}; available times {[f.time for f in fields]}")
    return chosen


class TransformCommand(Command):
    name = 'transform'
    help = "Map a field slice through D(delta), E(kappa), T(eps), B(c) compositions"

    def add_arguments(self, parser):
        parser.add_argument('--spec', help="e.g. 'T(1);E(1);T(1)' or 'Dmap'")
        parser.add_argument('--input', help="fields CSV written by simulate")
        parser.add_argument('--t', type=float, help="slice time to map (default: last slice)")
        parser.add_argument('--nx', type=int, help="output grid points (default: input grid)")
        parser.add_argument('--out', help="output fields CSV")

    def run(self, args):
        if not args.input or not args.out:
            raise ConfigError("transform needs --input CSV and --out CSV")
        manifest = self.new_manifest(args)
        spec = TransformSpec.parse(args.spec)
        source = select_slice(read_fields_csv(args.input), args.t)
        mapped = transform_field(spec, source, args.nx)
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        out = write_fields_csv(args.out, [mapped])

        table = SummaryTable(f"transform {spec.to_text()}")
        table.add_row('input time', source.time).add_row('mapped time', mapped.time)
        table.add_row('mapped interval', (mapped.grid.x_min, mapped.grid.x_max))
        table.add_row('grid points', mapped.grid.n)
        table.show()

        manifest.add_output(out, 'fields')
        self.finish_manifest(manifest, out)
        return EXIT_OK
