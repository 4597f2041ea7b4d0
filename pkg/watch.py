#!/usr/bin/env python3
"""Rerun a dev command whenever a .py file of the project changes.

    python watch.py                      # runs dev.py
    python watch.py -m pytest tests -x   # any python arguments
"""

import subprocess
import sys
import time
from pathlib import Path
from watchdog.observers import Observer
from watchdog.events import FileSystemEventHandler

WATCH_DIRS = [".", "XiBounds", "tests"]
RECURSIVE_DIRS = {"XiBounds"}
DEBOUNCE_SECONDS = 1.0


class RerunHandler(FileSystemEventHandler):
    def __init__(self, command):
        self.command = command
        self.process = None
        self.last_run = 0.0
        self.run()

    def run(self):
        if self.process and self.process.poll() is None:
            self.process.terminate()
            self.process.wait()
        print(f"\n{'=' * 50}")
        print(f"▶ Running: python {' '.join(self.command)}")
        print("=" * 50)
        self.process = subprocess.Popen([sys.executable, *self.command])

    def wants(self, path):
        p = Path(path)
        if p.suffix != ".py" or p.name == "watch.py":
            return False
        now = time.time()
        if now - self.last_run < DEBOUNCE_SECONDS:
            return False
        self.last_run = now
        return True

    def on_modified(self, event):
        if not event.is_directory and self.wants(event.src_path):
            print(f"\n🔄 File changed: {event.src_path}")
            self.run()

    on_created = on_modified


if __name__ == "__main__":
    command = sys.argv[1:] or ["dev.py"]
    print("🔥 Watching for changes...")
    print(f"   Directories: {', '.join(WATCH_DIRS)}")
    print("   Press Ctrl+C to stop\n")

    handler = RerunHandler(command)
    observer = Observer()
    for watch_dir in WATCH_DIRS:
        if Path(watch_dir).is_dir():
            observer.schedule(handler, watch_dir, recursive=watch_dir in RECURSIVE_DIRS)
    observer.start()

    try:
        while True:
            time.sleep(1)
    except KeyboardInterrupt:
        observer.stop()
        if handler.process:
            handler.process.terminate()
    observer.join()
