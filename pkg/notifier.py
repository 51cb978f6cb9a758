#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Desktop notifications for batch runs that end in fail or inconclusive.
plyer is optional; without it (or without a desktop) messages only go to the log.
"""

import time

from logging_setup import get_logger

try:
    from plyer import notification
except ImportError:
    notification = None

log = get_logger("notify")

TITLE = "Superalgebra verifier"


class NotificationSystem:
    def __init__(self, enabled: bool = True, debounce_seconds: float = 30.0):
        self.enabled = enabled
        self.debounce = debounce_seconds
        self.last_notification = 0.0
        self.sent = []

    @classmethod
    def from_config(cls, config) -> "NotificationSystem":
        if not config.has_section('notification'):
            return cls()
        sec = config['notification']
        return cls(enabled=sec.getboolean('enabled', fallback=True),
                   debounce_seconds=sec.getfloat('debounce_seconds', fallback=30.0))

    def job_finished(self, job_id: str, outcome: str, detail: str = ""):
        """Notify on fail / inconclusive outcomes (debounced)."""
        if outcome not in ("fail", "inconclusive", "error"):
            return
        message = f"{job_id}: {outcome}"
        if detail:
            message += f"\n{detail}"
        now = time.time()
        if now - self.last_notification < self.debounce:
            log.info(f"NOTIFY debounced {job_id}")
            return
        self.last_notification = now
        self._send(message)

    def _send(self, message: str):
        log.warning(f"NOTIFY {message}")
        self.sent.append(message)
        if not self.enabled or notification is None:
            return
        try:
            notification.notify(title=TITLE, message=message, timeout=10)
        except Exception as e:
            # no notification backend on this platform
            log.debug(f"NOTIFY popup unavailable: {e}")

    @staticmethod
    def send_error(error_message: str):
        log.error(f"ERROR ALERT {error_message}")
        if notification is None:
            return
        try:
            notification.notify(title=f"{TITLE} ERROR", message=error_message, timeout=15)
        except Exception as e:
            log.debug(f"NOTIFY popup unavailable: {e}")
