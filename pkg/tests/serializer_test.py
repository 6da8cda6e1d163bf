import pytest

from hofree.exceptions import SerializeError
from hofree.serializer import Serializer


def test_serialize_plain_data():
    serializer = Serializer()
    data = {'count': 18, 'values': ['1/2', '-3/1'], 'nested': {'ok': True}}
    assert serializer.deserialize(serializer.serialize(data)) == data
    assert serializer.deserialize(b'[1, 2]') == [1, 2]


def test_bad_content():
    serializer = Serializer()
    with pytest.raises(SerializeError):
        serializer.deserialize('{not json')
    with pytest.raises(SerializeError):
        serializer.deserialize(12)
    with pytest.raises(SerializeError):
        serializer.serialize(object())


def test_dump_and_load(tmp_path):
    serializer = Serializer(indent=2)
    path = str(tmp_path / 'table.json')
    serializer.dump([{'diagram': [2, 1], 'value': '1/3'}], path)
    assert serializer.load(path) == [{'diagram': [2, 1], 'value': '1/3'}]
    with pytest.raises(SerializeError):
        serializer.load(str(tmp_path / 'missing.json'))
