"""
zlift services - suite dispatch, report rendering and the verify command
"""

from services.runner import SuiteRunner, run_suite, merge_reports
from services.status import ReportTable
from services.cli import main

__all__ = [
    'SuiteRunner',
    'run_suite',
    'merge_reports',
    'ReportTable',
    'main'
]
