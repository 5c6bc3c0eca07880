"""
Terminal summaries
"""
from ui.summary import SummaryTable, painleve_summary, checks_summary

__all__ = ['SummaryTable', 'painleve_summary', 'checks_summary']
