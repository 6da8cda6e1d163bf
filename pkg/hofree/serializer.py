try:
    import ujson as json
except ImportError:
    import json

from hofree.exceptions import SerializeError
from hofree.typing import ByteOrStr


class Serializer:
    """
    JSON for every exact artifact; exact values travel as "p/q" strings, so
    the encoder only ever sees ints, strings, lists and dicts.
    """

    def __init__(self, encoding: str = 'utf-8', indent: int = 0):
        self.encoding = encoding
        self.indent = indent

    def _trans_type(self, content: ByteOrStr) -> str:
        if isinstance(content, bytes):
            content = content.decode(self.encoding)
        if not isinstance(content, str):
            raise SerializeError(f'Wrong data type({type(content)}) to deserialize')
        return content

    def serialize(self, content) -> str:
        try:
            if self.indent:
                return json.dumps(content, indent=self.indent)
            return json.dumps(content)
        except Exception as e:
            raise SerializeError('Content can not be serialized.') from e

    def deserialize(self, content: ByteOrStr):
        content = self._trans_type(content)
        try:
            return json.loads(content)
        except Exception as e:
            raise SerializeError('Content can not be deserialized.') from e

    def dump(self, content, path: str):
        with open(path, 'w', encoding=self.encoding) as f:
            f.write(self.serialize(content))
            f.write('\n')

    def load(self, path: str):
        try:
            with open(path, encoding=self.encoding) as f:
                return self.deserialize(f.read())
        except OSError as e:
            raise SerializeError(f'Can not read {path}: {e}') from e
