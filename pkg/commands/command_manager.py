"""
Command management: registers subcommands and dispatches one run
"""
import argparse
import logging
import sys
from pathlib import Path

from config.settings import EXIT_OK, EXIT_USAGE, LOG_FORMAT, TOOL_NAME, TOOL_VERSION
from core.errors import ToolkitError
from core.utils import dumps_report
from systems.manifest import RunManifest
from systems.settings import RunSettings

logger = logging.getLogger(__name__)

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')


class Command:
    """Base command"""
    name = None
    help = None

    def __init__(self, command_manager):
        self.command_manager = command_manager

    def add_arguments(self, parser):
        """Register flags; defaults come from RunSettings"""

    def run(self, args):
        """Execute and return an exit code"""
        raise NotImplementedError

    def parameters(self, args):
        """Flag values recorded in the manifest"""
        skip = {'config', 'command', 'log_level'}
        return {k: v for k, v in vars(args).items() if k not in skip and v is not None}

    def write_report(self, path, payload):
        """Deterministic JSON report"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(dumps_report(payload))
        logger.info("report written to %s", path)
        return path

    def new_manifest(self, args):
        return RunManifest(self.name, self.parameters(args)).start()

    def finish_manifest(self, manifest, out_path):
        """Save `<out>.manifest.json` next to the main output"""
        manifest.stop()
        out_path = Path(out_path)
        return manifest.save(out_path.parent, out_path.stem)


class CommandManager:
    """Holds the subcommands and turns argv into one run"""
    def __init__(self):
        self.commands = {}
        self.parser = argparse.ArgumentParser(
            prog=TOOL_NAME,
            description="Verification toolkit for i u_t + u_xx + F(t)|u|^2 u = 0")
        self.parser.add_argument('--version', action='version', version=f"{TOOL_NAME} {TOOL_VERSION}")
        self.subparsers = self.parser.add_subparsers(dest='command', metavar='command')
        self.subparsers.required = True
        self.command_parsers = {}

    def add_command(self, command):
        """Register a command and its flags"""
        sub = self.subparsers.add_parser(command.name, help=command.help, description=command.help)
        sub.add_argument('--config', help="JSON file supplying any flag; explicit flags win")
        sub.add_argument('--log-level', choices=LOG_LEVELS, type=str.upper,
                         help="diagnostics on stderr (default WARNING)")
        command.add_arguments(sub)
        sub.set_defaults(**RunSettings().for_command(command.name))
        self.commands[command.name] = command
        self.command_parsers[command.name] = sub

    def parse(self, argv):
        args = self.parser.parse_args(argv)
        if args.config:
            settings = RunSettings(args.config)
            self.command_parsers[args.command].set_defaults(**settings.for_command(args.command))
            args = self.parser.parse_args(argv)
        return args

    def run(self, argv):
        """Parse, configure logging and run; returns the exit code"""
        try:
            args = self.parse(argv)
        except SystemExit as exc:
            return exc.code if isinstance(exc.code, int) else EXIT_USAGE
        except ToolkitError as exc:
            print(f"{TOOL_NAME}: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        configure_logging(args.log_level)
        command = self.commands[args.command]
        try:
            code = command.run(args)
        except ToolkitError as exc:
            logger.debug("command %s failed", args.command, exc_info=True)
            print(f"{TOOL_NAME} {args.command}: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        return EXIT_OK if code is None else code


def configure_logging(level):
    logging.basicConfig(level=getattr(logging, (level or 'WARNING').upper(), logging.WARNING),
                        format=LOG_FORMAT, stream=sys.stderr, force=True)


def build_manager():
    """Manager with every subcommand registered"""
    from commands.painleve import PainleveCommand
    from commands.simulate import SimulateCommand
    from commands.sweep import SweepCommand
    from commands.transform import TransformCommand
    from commands.verify import VerifyCommand

    manager = CommandManager()
    for command_class in (PainleveCommand, SimulateCommand, VerifyCommand, TransformCommand, SweepCommand):
        manager.add_command(command_class(manager))
    return manager


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    return build_manager().run(list(argv))
