"""
Toolkit constants and named verification cases
"""
