from pathlib import Path

import pytest

from dirclust import save_wordlist
from dirclust.cli import main
from synthcorpus import family_corpus


@pytest.fixture
def corpus(tmp_path):
    """Wordlist file, simulated-target file (fam0 valid), and a work dir."""
    wl, families = family_corpus(sizes=(10, 10, 10), seed=3)
    wordlist_file = tmp_path / "wordlist.txt"
    save_wordlist(wl, wordlist_file)
    target_file = tmp_path / "target.txt"
    target_file.write_text("".join(p + "\n" for p in families["fam0"]), encoding="utf-8")
    return wordlist_file, target_file, tmp_path


def build_clusters(corpus) -> tuple[Path, Path]:
    wordlist_file, _, tmp = corpus
    emb = tmp / "emb.txt"
    clusters = tmp / "clusters.txt"
    assert main(["embed", "--wordlist", str(wordlist_file), "--out", str(emb),
                 "--dim", "64"]) == 0
    assert main(["cluster", "--embeddings", str(emb), "--wordlist", str(wordlist_file),
                 "--k", "3", "--out", str(clusters)]) == 0
    return emb, clusters


def test_tokenize_tsv(tmp_path, capsys):
    f = tmp_path / "w.txt"
    f.write_text("wp-login.php\n", encoding="utf-8")
    assert main(["tokenize", "--wordlist", str(f)]) == 0
    out = capsys.readouterr().out
    assert out == "0\t/wp-login.php\t/ wp - login . php\n"


def test_tokenize_to_file(tmp_path):
    f = tmp_path / "w.txt"
    f.write_text("/a.php\n/b.php\n", encoding="utf-8")
    out = tmp_path / "sentences.tsv"
    assert main(["tokenize", "--wordlist", str(f), "--out", str(out)]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("0\t/a.php\t")
    assert len(lines) == 2


def test_full_pipeline_and_run(corpus, capsys):
    wordlist_file, target_file, tmp = corpus
    emb, clusters = build_clusters(corpus)

    pca_out = tmp / "pca.tsv"
    assert main(["pca", "--embeddings", str(emb), "--wordlist", str(wordlist_file),
                 "--clusters", str(clusters), "--out", str(pca_out)]) == 0
    assert len(pca_out.read_text(encoding="utf-8").splitlines()) == 30

    log = tmp / "run.csv"
    assert main(["run", "--target", str(target_file), "--wordlist", str(wordlist_file),
                 "--seed", "1", "--out", str(log)]) == 0
    assert log.read_text(encoding="utf-8").startswith("sequence_index,")

    clustered_log = tmp / "run_clustered.csv"
    assert main(["run", "--target", str(target_file), "--wordlist", str(wordlist_file),
                 "--seed", "1", "--use-clustering", "--clusters", str(clusters),
                 "--out", str(clustered_log)]) == 0
    assert ",clustered," in clustered_log.read_text(encoding="utf-8")


def test_run_reproducible_artifacts(corpus):
    wordlist_file, target_file, tmp = corpus
    a, b = tmp / "a.csv", tmp / "b.csv"
    for out in (a, b):
        assert main(["run", "--target", str(target_file), "--wordlist", str(wordlist_file),
                     "--seed", "7", "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_bench_reports_improvement(corpus, capsys):
    wordlist_file, target_file, tmp = corpus
    _, clusters = build_clusters(corpus)
    capsys.readouterr()
    out = tmp / "exp"
    assert main(["bench", "--target", str(target_file), "--wordlist", str(wordlist_file),
                 "--clusters", str(clusters), "--repetitions", "5", "--base-seed", "3",
                 "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "improvement:" in stdout
    assert (out / "report.tsv").exists()
    assert (out / "plot.tsv").exists()
    report = (out / "report.tsv").read_text(encoding="utf-8")
    improvement = float(next(
        line.split("=")[1] for line in report.splitlines()
        if line.startswith("# improvement_full=")
    ))
    assert improvement > 0


def test_use_clustering_requires_clusters_flag(corpus, capsys):
    wordlist_file, target_file, _ = corpus
    code = main(["run", "--target", str(target_file), "--wordlist", str(wordlist_file),
                 "--use-clustering"])
    assert code == 1
    assert "--clusters" in capsys.readouterr().err


def test_unknown_flag_is_usage_error(capsys):
    assert main(["run", "--no-such-flag"]) == 1


def test_missing_wordlist_is_data_error(tmp_path, capsys):
    missing = tmp_path / "missing.txt"
    code = main(["tokenize", "--wordlist", str(missing)])
    assert code == 2
    assert str(missing) in capsys.readouterr().err


def test_bad_embedding_file_is_data_error(corpus, capsys):
    wordlist_file, _, tmp = corpus
    bad = tmp / "bad_emb.txt"
    bad.write_text("not an embedding file\n", encoding="utf-8")
    assert main(["cluster", "--embeddings", str(bad), "--wordlist", str(wordlist_file),
                 "--out", str(tmp / "c.txt")]) == 2


def test_transport_abort_exit_code(corpus, capsys):
    wordlist_file, _, tmp = corpus
    out = tmp / "log.csv"
    code = main(["run", "--target", "http://127.0.0.1:9", "--wordlist", str(wordlist_file),
                 "--retries", "0", "--timeout", "0.5", "--out", str(out)])
    assert code == 3
    err = capsys.readouterr().err
    assert "transport abort" in err
    assert out.with_suffix(".partial.csv").exists()


def test_elbow_flag(corpus, capsys):
    wordlist_file, _, tmp = corpus
    emb = tmp / "emb.txt"
    assert main(["embed", "--wordlist", str(wordlist_file), "--out", str(emb),
                 "--dim", "64"]) == 0
    clusters = tmp / "c.txt"
    assert main(["cluster", "--embeddings", str(emb), "--wordlist", str(wordlist_file),
                 "--elbow", "2..6", "--out", str(clusters)]) == 0
    assert "elbow selected k=" in capsys.readouterr().out
    assert clusters.exists()


def test_merge_subcommand(tmp_path, capsys):
    a = tmp_path / "a.txt"
    a.write_text("/x\n/y\n", encoding="utf-8")
    b = tmp_path / "b.txt"
    b.write_text("/y\n/z\n", encoding="utf-8")
    out = tmp_path / "merged.txt"
    assert main(["merge", f"A={a}", f"B={b}", "--seed", "4", "--out", str(out)]) == 0
    merged = sorted(out.read_text(encoding="utf-8").split())
    assert merged == ["/x", "/y", "/z"]


def test_help_lists_spec_defaults(capsys):
    assert main(["embed", "--help"]) == 0
    assert "512" in capsys.readouterr().out
    assert main(["cluster", "--help"]) == 0
    assert "default: 20" in capsys.readouterr().out
    assert main(["bench", "--help"]) == 0
    out = capsys.readouterr().out
    assert "default: 30" in out and "default: inf" in out
    assert main(["--help"]) == 0
    capsys.readouterr()


def test_env_var_output_dir(corpus, monkeypatch, capsys):
    wordlist_file, target_file, tmp = corpus
    monkeypatch.setenv("DIRCLUST_OUT", str(tmp / "envout"))
    (tmp / "envout").mkdir()
    assert main(["run", "--target", str(target_file), "--wordlist", str(wordlist_file),
                 "--seed", "2"]) == 0
    assert (tmp / "envout" / "run_bruteforce_seed2.csv").exists()
