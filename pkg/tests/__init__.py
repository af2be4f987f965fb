"""
bmg_lab Tests Package
"""
