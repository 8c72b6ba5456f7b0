"""
Integration tests: solvers over many steps and presets through the runner.
"""
