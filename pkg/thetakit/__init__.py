"""Init file for thetakit."""

__author__ = """thetakit developers"""
__version__ = "0.4.0"
