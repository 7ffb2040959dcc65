use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use bruck_ffi::*;

const C2C2: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/systems/c2c2.json");

fn t(i: u64, level: u64, elem: u64, j: u64) -> BruckElement {
    BruckElement {
        is_zero: false,
        i,
        level,
        elem,
        j,
    }
}

const ZERO: BruckElement = BruckElement {
    is_zero: true,
    i: 0,
    level: 0,
    elem: 0,
    j: 0,
};

struct Handle(*mut BruckSystem);

impl Handle {
    fn load(path: &str) -> Self {
        let path = CString::new(path).unwrap();
        let mut sys = ptr::null_mut();
        assert_eq!(unsafe { bruck_system_load(path.as_ptr(), &mut sys) }, BruckStatus::Ok);
        assert!(!sys.is_null());
        Handle(sys)
    }
}

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { bruck_system_free(self.0) };
    }
}

fn last_error() -> String {
    let p = bruck_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn arithmetic_matches_the_core() {
    let h = Handle::load(C2C2);
    let mut z = BruckElement::default();
    unsafe {
        assert_eq!(bruck_mul(h.0, t(2, 0, 1, 0), t(1, 1, 1, 3), &mut z), BruckStatus::Ok);
        assert_eq!(z, t(3, 1, 0, 3));
        assert_eq!(bruck_mul(h.0, ZERO, t(1, 1, 1, 3), &mut z), BruckStatus::Ok);
        assert!(z.is_zero);
        assert_eq!(bruck_inv(h.0, t(4, 1, 1, 2), &mut z), BruckStatus::Ok);
        assert_eq!(z, t(2, 1, 1, 4));
        let mut p = BruckPair::default();
        assert_eq!(bruck_eta(h.0, t(4, 1, 1, 2), &mut p), BruckStatus::Ok);
        assert_eq!(
            p,
            BruckPair {
                is_zero: false,
                k: 4,
                l: 2
            }
        );
        let mut below = false;
        assert_eq!(
            bruck_nat_order(h.0, t(3, 1, 0, 3), t(1, 0, 0, 1), &mut below),
            BruckStatus::Ok
        );
        assert!(below);
        assert_eq!(
            bruck_nat_order(h.0, t(1, 0, 0, 1), t(3, 1, 0, 3), &mut below),
            BruckStatus::Ok
        );
        assert!(!below);
    }
}

#[test]
fn witness_round_trips() {
    let h = Handle::load(C2C2);
    let (a, b) = (t(5, 1, 1, 2), t(0, 0, 1, 7));
    let (mut x, mut y, mut xa, mut xay) = Default::default();
    unsafe {
        assert_eq!(bruck_witness(h.0, a, b, &mut x, &mut y), BruckStatus::Ok);
        assert_eq!(bruck_mul(h.0, x, a, &mut xa), BruckStatus::Ok);
        assert_eq!(bruck_mul(h.0, xa, y, &mut xay), BruckStatus::Ok);
        assert_eq!(bruck_witness(h.0, ZERO, b, &mut x, &mut y), BruckStatus::ZeroArgument);
    }
    assert_eq!(xay, b);
}

#[test]
fn error_codes() {
    let h = Handle::load(C2C2);
    let mut z = BruckElement::default();
    unsafe {
        assert_eq!(
            bruck_mul(h.0, t(0, 5, 0, 0), t(0, 0, 0, 0), &mut z),
            BruckStatus::InvalidElement
        );
        assert!(last_error().contains("not an element"), "{}", last_error());
        assert_eq!(
            bruck_mul(ptr::null(), t(0, 0, 0, 0), t(0, 0, 0, 0), &mut z),
            BruckStatus::NullPointer
        );
        assert_eq!(
            bruck_mul(h.0, t(0, 0, 0, 0), t(0, 0, 0, 0), ptr::null_mut()),
            BruckStatus::NullPointer
        );
        assert_eq!(
            bruck_mul(h.0, t(1, 0, 0, 0), t(u64::MAX, 0, 0, 0), &mut z),
            BruckStatus::Overflow
        );
        let mut failed = 0;
        assert_eq!(bruck_verify_all(h.0, 17, 0, &mut failed), BruckStatus::InvalidWindow);
        let mut p = BruckPair::default();
        let big = BruckPair {
            is_zero: false,
            k: u64::MAX,
            l: 0,
        };
        assert_eq!(
            bruck_bicyclic_mul(
                big,
                BruckPair {
                    is_zero: false,
                    k: 1,
                    l: 0
                },
                &mut p
            ),
            BruckStatus::Overflow
        );
    }
}

#[test]
fn loading_failures_are_classified() {
    let mut sys = ptr::null_mut();
    let fault = CString::new(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../core/fixtures/faults/theta_not_hom.json"
    ))
    .unwrap();
    let missing = CString::new("/nonexistent/system.json").unwrap();
    let garbage = CString::new("{not json").unwrap();
    unsafe {
        assert_eq!(
            bruck_system_load(fault.as_ptr(), &mut sys),
            BruckStatus::ValidationFailed
        );
        assert!(sys.is_null());
        assert!(last_error().contains("θ not a homomorphism"));
        assert_eq!(bruck_system_load(missing.as_ptr(), &mut sys), BruckStatus::Io);
        assert_eq!(bruck_system_from_json(garbage.as_ptr(), &mut sys), BruckStatus::Parse);
        assert_eq!(bruck_system_from_json(ptr::null(), &mut sys), BruckStatus::NullPointer);
        assert_eq!(
            bruck_system_from_json(garbage.as_ptr(), ptr::null_mut()),
            BruckStatus::NullPointer
        );
        bruck_system_free(ptr::null_mut());
    }
}

#[test]
fn trivial_system_is_the_bicyclic_monoid() {
    let json = CString::new(std::fs::read_to_string(C2C2.replace("c2c2", "trivial")).unwrap()).unwrap();
    let mut sys = ptr::null_mut();
    unsafe {
        assert_eq!(bruck_system_from_json(json.as_ptr(), &mut sys), BruckStatus::Ok);
        assert!(!bruck_system_has_zero(sys));
        assert_eq!(bruck_system_group_size(sys), 1);
        let mut z = BruckElement::default();
        let mut p = BruckPair::default();
        for (k, l, m, n) in [(2, 3, 1, 4), (0, 5, 7, 0), (3, 3, 3, 3)] {
            assert_eq!(bruck_mul(sys, t(k, 0, 0, l), t(m, 0, 0, n), &mut z), BruckStatus::Ok);
            assert_eq!(
                bruck_bicyclic_mul(
                    BruckPair { is_zero: false, k, l },
                    BruckPair {
                        is_zero: false,
                        k: m,
                        l: n
                    },
                    &mut p
                ),
                BruckStatus::Ok
            );
            assert_eq!((z.i, z.j), (p.k, p.l));
        }
        let mut failed = 99;
        assert_eq!(bruck_verify_all(sys, 2, 0, &mut failed), BruckStatus::Ok);
        assert_eq!(failed, 0);
        assert_eq!(bruck_mul(sys, ZERO, ZERO, &mut z), BruckStatus::ZeroNotAdjoined);
        bruck_system_free(sys);
    }
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/bruck.h")).unwrap();
    for name in [
        "bruck_system_load",
        "bruck_mul",
        "bruck_last_error",
        "BRUCK_STATUS_OK",
        "typedef struct BruckSystem BruckSystem",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compiles `tests/c/smoke.c` against the header and the static library.
/// Skipped (with a message) when no C compiler is on the path.
#[test]
fn c_program_links_and_runs() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir: PathBuf = exe.parent().and_then(Path::parent).unwrap().to_path_buf();
    let lib = profile_dir.join("libbruck_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let out = tempfile::tempdir().unwrap();
    let bin = out.path().join("smoke");
    let compiled = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status();
    match compiled {
        Err(e) => {
            eprintln!("skipping: no C compiler ({e})");
            return;
        }
        Ok(s) => assert!(s.success(), "cc failed"),
    }
    let run = Command::new(&bin).arg(C2C2).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok 0.1.0"));
}
