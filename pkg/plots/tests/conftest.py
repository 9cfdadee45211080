import pytest

FAST = ["--samples", "2000", "--steps", "4"]

GOLDEN_EXPERIMENTS = (
    "fig1",
    "fig2a", "fig2b", "fig2c", "fig2d",
    "fig3",
    "fig4a", "fig4b", "fig4c", "fig4d",
    "fig5a", "fig5b",
)


@pytest.fixture(scope="session")
def golden_dir(tmp_path_factory):
    """CSV fixtures produced by the simulator CLI at reduced sample counts."""
    cli = pytest.importorskip("spinphase.cli")
    root = tmp_path_factory.mktemp("golden")
    for exp in GOLDEN_EXPERIMENTS:
        out = root / f"{exp}.csv"
        code = cli.main([exp, "--out", str(out)] + FAST)
        assert code == 0, f"golden CSV generation failed for {exp}"
    return root
