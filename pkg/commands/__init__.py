"""
Command-line subcommands
"""
from commands.command_manager import Command, CommandManager, build_manager, main

__all__ = ['Command', 'CommandManager', 'build_manager', 'main']
