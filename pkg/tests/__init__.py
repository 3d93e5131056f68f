"""
Test package for the harmonic extension toolkit
"""
