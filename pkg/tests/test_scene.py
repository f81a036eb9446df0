import copy
import json
import math

import pytest

from nullpencil.errors import SceneError
from nullpencil.marching import Composed, Custom, Polynomial, Product
from nullpencil.presets import PRESETS
from nullpencil.scene import load_scene, scene_from_dict


def doc(name="ex31a"):
    return copy.deepcopy(PRESETS[name].document)


def test_load_ex31a(tmp_path):
    path = tmp_path / "ex31a.json"
    path.write_text(json.dumps(doc()))
    scene = load_scene(path)
    assert isinstance(scene.marching.form, Product)
    assert scene.marching.t0 == 0.0
    assert scene.curve.domain == (0.0, 2 * math.pi)
    assert scene.marching.t_domain == (-3.0, 3.0)
    assert scene.curve.frame is not None


@pytest.mark.parametrize(
    "name, form", [("ex31d", Polynomial), ("counterexample", Custom), ("ex32", Product)]
)
def test_forms(name, form):
    assert isinstance(scene_from_dict(doc(name)).marching.form, form)


def test_composed_form():
    d = doc()
    d["marching"] = {
        "form": "composed", "a1": [1], "a2": [1, 0], "a3": [1],
        "k": "1", "m": "1", "w": "1", "X": "t", "Y": "t", "Z": "t",
        "f": "w", "g": "w^2", "h": "sin(w)",
    }
    with pytest.raises(SceneError, match="same length"):
        scene_from_dict(d)
    d["marching"]["a2"] = [1]
    assert isinstance(scene_from_dict(d).marching.form, Composed)


def test_auto_frame_when_omitted():
    d = doc()
    del d["curve"]["frame"]
    assert scene_from_dict(d).curve.auto_frame


def test_t0_outside_domain():
    d = doc()
    d["t0"] = 5
    with pytest.raises(SceneError) as exc:
        scene_from_dict(d)
    assert exc.value.path == "/t0"


def test_unknown_function_reported_with_path():
    d = doc()
    d["marching"]["k"] = "si(s)"
    with pytest.raises(SceneError) as exc:
        scene_from_dict(d)
    assert exc.value.path == "/marching/k"
    assert "unknown function" in str(exc.value)


def test_wrong_variable_in_factor():
    d = doc()
    d["marching"]["X"] = "s*t"
    with pytest.raises(SceneError) as exc:
        scene_from_dict(d)
    assert exc.value.path == "/marching/X"


@pytest.mark.parametrize(
    "mutate, path",
    [
        (lambda d: d.update(colour="red"), ""),
        (lambda d: d["curve"].update(extra=1), "/curve"),
        (lambda d: d["marching"].update(q="t"), "/marching"),
        (lambda d: d.update(schema_version=2), "/schema_version"),
        (lambda d: d["curve"]["components"].pop(), "/curve/components"),
        (lambda d: d.update(grid={"n_s": 1, "n_t": 4}), "/grid/n_s"),
        (lambda d: d["marching"].update(form="spline"), "/marching/form"),
        (lambda d: d.pop("t0"), ""),
    ],
)
def test_schema_violations(mutate, path):
    d = doc()
    mutate(d)
    with pytest.raises(SceneError) as exc:
        scene_from_dict(d)
    assert exc.value.path == path
    assert "schema violation" in str(exc.value)


def test_constant_expression_domain():
    d = doc()
    d["curve"]["domain"] = ["-pi", "pi/2"]
    assert scene_from_dict(d).curve.domain == (-math.pi, math.pi / 2)


def test_reversed_domain():
    d = doc()
    d["curve"]["domain"] = [1, 0]
    with pytest.raises(SceneError, match="L1 < L2"):
        scene_from_dict(d)


def test_tolerance_overrides():
    d = doc()
    d["tolerances"] = {"analytic": 1e-6}
    scene = scene_from_dict(d)
    assert scene.tolerances.analytic == 1e-6
    assert scene.tolerances.frame == 1e-10


def test_invalid_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(SceneError, match="invalid JSON"):
        load_scene(p)
