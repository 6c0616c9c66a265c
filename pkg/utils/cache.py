"""Content-addressed cache for expensive pieces (closures, mode matrices)"""
import os
import json
import hashlib
import logging
from typing import Any, Callable, Optional

from utils.constants import ErrorCode
from utils.errors import VerificationError


class CacheStore:
    """JSON blobs keyed by sha256 of their parameters, checksummed on read"""

    def __init__(self, root: Optional[str], logger: Optional[logging.Logger] = None):
        self.root = root
        self.logger = logger or logging.getLogger("zlift")
        if root:
            os.makedirs(root, exist_ok=True)

    @staticmethod
    def key_for(namespace: str, params: Any) -> str:
        body = json.dumps({"ns": namespace, "params": params}, sort_keys=True, default=str)
        return hashlib.sha256(body.encode()).hexdigest()

    def _path(self, key: str) -> str:
        return os.path.join(self.root, f"{key}.json")

    def load(self, key: str) -> Optional[Any]:
        """Return cached payload or None; raise CACHE_CORRUPT on checksum mismatch"""
        if not self.root:
            return None
        path = self._path(key)
        if not os.path.exists(path):
            return None
        try:
            with open(path, 'r') as f:
                blob = json.load(f)
            payload = blob["payload"]
            digest = hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()
        except (OSError, ValueError, KeyError, TypeError) as e:
            raise VerificationError(ErrorCode.CACHE_CORRUPT, f"unreadable cache entry {key}: {e}")
        if digest != blob.get("sha256"):
            raise VerificationError(ErrorCode.CACHE_CORRUPT, f"checksum mismatch for cache entry {key}")
        return payload

    def store(self, key: str, payload: Any):
        """Write atomically: temp file then rename"""
        if not self.root:
            return
        digest = hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()
        tmp = self._path(key) + ".tmp"
        with open(tmp, 'w') as f:
            json.dump({"sha256": digest, "payload": payload}, f, sort_keys=True)
        os.replace(tmp, self._path(key))

    def get_or_compute(self, namespace: str, params: Any, compute: Callable[[], Any]) -> Any:
        """Cached payload for (namespace, params); corrupt entries are logged and recomputed"""
        key = self.key_for(namespace, params)
        try:
            cached = self.load(key)
        except VerificationError as e:
            self.logger.warning(f"{e}; recomputing")
            cached = None
        if cached is not None:
            self.logger.debug(f"cache hit {namespace} {key[:12]}")
            return cached
        payload = compute()
        self.store(key, payload)
        return payload
