from __future__ import annotations

import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from dirclust import wordlist_from_paths


@pytest.fixture
def small_wordlist():
    return wordlist_from_paths(
        ["/wp-login.php", "/wp-config.php", "/images/bricks.jpg", "/UnicodeTest.txt"]
    )


class _FixtureHandler(BaseHTTPRequestHandler):
    """Tiny target: fixed statuses per path, connection drop on /boom, else 404."""

    routes = {
        "/ok": 200,
        "/forbidden": 403,
        "/error": 500,
    }

    def do_GET(self):
        if self.path == "/boom":
            self.connection.close()
            return
        if self.path == "/redir":
            self.send_response(301)
            self.send_header("Location", "/ok")
            self.end_headers()
            return
        status = self.routes.get(self.path, 404)
        self.send_response(status)
        self.send_header("Content-Length", "2")
        self.end_headers()
        self.wfile.write(b"ok")

    def log_message(self, *args):  # keep pytest output clean
        pass


@pytest.fixture(scope="session")
def http_fixture_url():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _FixtureHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}"
    server.shutdown()
    thread.join(timeout=5)
