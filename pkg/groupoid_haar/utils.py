import contextlib
import json
import os
import shutil
import tempfile

from .manifest import Manifest, serialize
from .registry import example_text


@contextlib.contextmanager
def make_case(**manifests):
    """Make a test case of manifest files in a temporary directory

    :param manifests: file stem -> manifest. A manifest may be a Manifest,
           a dict to be dumped as JSON, raw JSON text, or the name of a
           built-in example prefixed by "example:".
    :return: a dict of file stem -> path of the written file. The
             directory is removed on exit.
    """
    tempdir = tempfile.mkdtemp()
    paths = {}
    try:
        for stem, manifest in manifests.items():
            if isinstance(manifest, Manifest):
                text = serialize(manifest)
            elif isinstance(manifest, dict):
                text = json.dumps(manifest, indent=2, sort_keys=True)
            elif manifest.startswith("example:"):
                text = example_text(manifest[len("example:"):])
            else:
                text = manifest
            paths[stem] = os.path.join(tempdir, stem + ".json")
            with open(paths[stem], "w") as fd:
                fd.write(text)
        yield paths
    finally:
        shutil.rmtree(tempdir)
