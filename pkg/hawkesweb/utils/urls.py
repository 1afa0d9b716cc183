"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import functools
import logging
import re
import urllib.parse as _up

import tldextract

from hawkesweb.exceptions import UrlParseError

bot = logging.getLogger("hawkesweb.utils.urls")

scheme_regex = re.compile(r"^[a-zA-Z][a-zA-Z0-9+.\-]*://")
host_regex = re.compile(r"^[a-z0-9\-_.~%]+$")
default_ports = {"80", "443"}

# The bundled public suffix snapshot is used, never a live download
_extractor = tldextract.TLDExtract(suffix_list_urls=())


def split_url(raw):
    """
    Split a raw URL into a lowercase host (without userinfo or default port),
    a path with trailing slashes removed, and the verbatim query. Inputs
    without a scheme are read as http.
    """
    if not isinstance(raw, str) or not raw.strip():
        raise UrlParseError(raw, "empty URL")

    url = raw.strip()
    if re.search(r"\s", url):
        raise UrlParseError(raw, "whitespace inside URL")
    if not scheme_regex.search(url):
        url = "http://" + url

    try:
        parsed = _up.urlsplit(url)
        port = parsed.port
    except ValueError as e:
        raise UrlParseError(raw, str(e))

    host = (parsed.hostname or "").lower().rstrip(".")
    if host and not host.isascii():
        try:
            host = host.encode("idna").decode("ascii")
        except UnicodeError as e:
            raise UrlParseError(raw, str(e))
    if not host or not host_regex.match(host):
        raise UrlParseError(raw, "missing or invalid host")

    if port is not None and str(port) not in default_ports:
        host = "%s:%s" % (host, port)

    path = parsed.path.rstrip("/")
    return host, path, parsed.query


def join_url(host, path, query):
    """the canonical string form: host + path, then ?query when present"""
    url = host + path
    if query:
        url = "%s?%s" % (url, query)
    return url


def bare_host(host):
    """drop a port and a leading www. from a canonical host"""
    host = host.split(":", 1)[0]
    if host.startswith("www."):
        host = host[4:]
    return host


def host_in(host, domains):
    """True if the host equals a listed domain or is a subdomain of one"""
    host = bare_host(host)
    parts = host.split(".")
    for i in range(len(parts) - 1):
        if ".".join(parts[i:]) in domains:
            return True
    return host in domains


@functools.lru_cache(maxsize=65536)
def registered_domain(url):
    """the registered domain (domain + public suffix) of a URL or host, or
    "unknown" if none can be found
    """
    try:
        ext = _extractor(url or "")
    except Exception:
        return "unknown"
    root = ".".join([p for p in [ext.domain, ext.suffix] if p])
    return root.lower() or "unknown"
