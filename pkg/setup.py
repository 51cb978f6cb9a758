#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Superalgebra verifier setup script

Run this script to:
1. Create the folder structure used by `main.py watch`
2. Install Python dependencies
3. Validate configuration
4. Run a quick smoke verification
"""

import sys
import subprocess
from pathlib import Path

REQUIRED_SECTIONS = ['paths', 'verify', 'batch', 'notification']


def create_directories(config=None):
    """Create required folder structure"""
    print("[SETUP] Creating directory structure...")
    paths = config['paths'] if config is not None and config.has_section('paths') else {}
    dirs = [paths.get(k, f'folders/{k[:-4]}') for k in
            ('input_dir', 'waiting_dir', 'products_dir', 'state_dir', 'logs_dir')]
    for dir_path in dirs:
        Path(dir_path).mkdir(parents=True, exist_ok=True)
        print(f"  [OK] {dir_path}/")
    print("[SETUP] Directory structure created successfully!")


def install_dependencies():
    """Install required Python packages"""
    print("[SETUP] Installing Python dependencies...")
    try:
        subprocess.check_call([sys.executable, '-m', 'pip', 'install', '-r', 'requirements.txt'])
        print("[SETUP] Dependencies installed successfully!")
    except subprocess.CalledProcessError as e:
        print(f"[ERROR] Failed to install dependencies: {e}")
        return False
    return True


def validate_config(path='config.txt'):
    """Check sections and the [verify] defaults; returns the parsed config or None."""
    print("[SETUP] Validating configuration...")
    if not Path(path).exists():
        print(f"[ERROR] {path} not found!")
        return None

    from suite import UsageError, load_config, suite_config_from
    config = load_config(path)
    for section in REQUIRED_SECTIONS:
        if section not in config:
            print(f"[ERROR] Missing section: [{section}]")
            return None
        print(f"  [OK] [{section}]")
    try:
        cfg = suite_config_from(config['verify'])
    except UsageError as e:
        print(f"[ERROR] [verify] is invalid: {e}")
        return None
    print(f"  [OK] default run: {cfg.construction}/{cfg.suite} trials={cfg.trials} seed={cfg.seed}")
    print("[SETUP] Configuration validation completed!")
    return config


def smoke_test():
    """A few trials of the Jordan suite on J(A,Delta)."""
    print("[SETUP] Running smoke verification...")
    from suite import SuiteConfig, run_suite
    report = run_suite(SuiteConfig(construction="jadelta", suite="jordan", trials=5, max_deg=2, workers=1))
    print(f"  overall: {report.overall}")
    return report.overall == "pass"


def main():
    """Main setup routine"""
    print("=" * 60)
    print("Superalgebra verifier setup")
    print("=" * 60)

    if not install_dependencies():
        print("[SETUP] Setup failed due to dependency installation issues.")
        return 1
    print()

    config = validate_config()
    if config is None:
        print("[SETUP] Please review and update config.txt before running.")
        return 1
    print()

    create_directories(config)
    print()

    if not smoke_test():
        print("[SETUP] Smoke verification did not pass; run `python main.py verify -v` for details.")
        return 1
    print()

    print("=" * 60)
    print("Setup completed successfully!")
    print("")
    print("Next steps:")
    print("1. python main.py verify --construction jadelta --suite all")
    print("2. python main.py watch   (drop *.ini suite files into folders/input/)")
    print("=" * 60)
    return 0


if __name__ == "__main__":
    if len(sys.argv) > 1:
        # Invoked by a build frontend (pip/setuptools): metadata lives in pyproject.toml.
        from setuptools import setup
        setup()
    else:
        sys.exit(main())
