"""
View package for ptwists

Contains the command line front end and its text reports
"""

from ptwists.view.cli import build_parser, main, run
from ptwists.view.report import format_certificate, format_module, format_profile

__all__ = ['build_parser', 'main', 'run', 'format_certificate', 'format_module', 'format_profile']
