#!/usr/bin/env python3
"""Bridges mtprune's parser wire shape to a real dependency parser.

mtprune POSTs {"sentence": "..."} and expects
{"tokens": [{"index", "word", "head", "deprel"}, ...]} back. This server
answers those requests either from a directory of frozen parse files
(--fixtures) or by forwarding to a UDPipe-style REST service that returns
CoNLL-U in a JSON "result" field (--upstream).

  python3 scripts/parser_bridge.py --port 9090 --fixtures tests/fixtures
  python3 scripts/parser_bridge.py --port 9090 \
      --upstream https://lindat.mff.cuni.cz/services/udpipe/api/process
"""

import argparse
import json
import pathlib
import sys
import urllib.parse
import urllib.request
from http.server import BaseHTTPRequestHandler, HTTPServer


def conllu_to_tokens(conllu):
    tokens = []
    for line in conllu.splitlines():
        if not line or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 8 or not cols[0].isdigit():
            continue
        tokens.append({"index": int(cols[0]), "word": cols[1],
                       "head": int(cols[6]), "deprel": cols[7]})
    return tokens


def load_fixture_index(directory):
    index = {}
    for path in pathlib.Path(directory).glob("*.json"):
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except ValueError:
            continue
        if "tokens" not in doc:
            continue
        sentence = " ".join(t["word"] for t in doc["tokens"])
        index[sentence] = doc
    return index


def make_handler(fixtures, upstream):
    class Handler(BaseHTTPRequestHandler):
        def do_POST(self):
            length = int(self.headers.get("Content-Length", "0"))
            try:
                body = json.loads(self.rfile.read(length))
                sentence = body["sentence"]
            except (ValueError, KeyError):
                self.reply(400, {"error": "expected {\"sentence\": ...}"})
                return
            if fixtures is not None:
                doc = fixtures.get(sentence)
                if doc is None:
                    self.reply(404, {"error": "no frozen parse for this sentence"})
                else:
                    self.reply(200, doc)
                return
            data = urllib.parse.urlencode({"tokenizer": "", "tagger": "",
                                           "parser": "", "data": sentence})
            with urllib.request.urlopen(upstream, data.encode()) as res:
                result = json.loads(res.read())
            self.reply(200, {"tokens": conllu_to_tokens(result["result"])})

        def reply(self, status, doc):
            payload = json.dumps(doc, ensure_ascii=False).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(payload)))
            self.end_headers()
            self.wfile.write(payload)

        def log_message(self, fmt, *args):
            pass

    return Handler


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--port", type=int, default=9090)
    ap.add_argument("--fixtures", help="directory of frozen parse JSON files")
    ap.add_argument("--upstream", help="UDPipe-style REST endpoint")
    args = ap.parse_args()
    if bool(args.fixtures) == bool(args.upstream):
        ap.error("pick exactly one of --fixtures and --upstream")
    fixtures = load_fixture_index(args.fixtures) if args.fixtures else None
    server = HTTPServer(("127.0.0.1", args.port), make_handler(fixtures, args.upstream))
    print(f"parser bridge on 127.0.0.1:{args.port}", file=sys.stderr)
    server.serve_forever()


if __name__ == "__main__":
    main()
